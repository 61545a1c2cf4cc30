#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfwm/config.hpp"

namespace sfwm {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out`; failures print one `{"error": ...}` line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Builds the pump-bandwidth x fiber-length JSA array (rows = lengths,
/// columns = bandwidths) and writes one CSV per cell plus `index.json` into
/// `out_dir`. Returns the index document.
nlohmann::json emit_gallery(const RunConfig& cfg, const std::string& out_dir);

/// CSV body `lambda_s_nm,lambda_i_nm,intensity` for a joint spectrum.
std::string joint_spectrum_csv(const JointSpectrum& js);

}  // namespace sfwm
