#pragma once

#include <stdexcept>
#include <string>

namespace sfwm {

/// Physics or numerical domain violation (out-of-window wavelength, no
/// phase matching, empty spectrum, ...). The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class NoPhaseMatchingError : public DomainError {
 public:
  explicit NoPhaseMatchingError(const std::string& what) : DomainError(what) {}
};

class FactorabilityError : public DomainError {
 public:
  explicit FactorabilityError(const std::string& what) : DomainError(what) {}
};

/// Malformed input: bad config keys, unparsable CSV/JSON, invalid argument
/// combinations. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sfwm
