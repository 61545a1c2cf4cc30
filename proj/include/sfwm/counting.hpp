#pragma once

#include <cstdint>

namespace sfwm {

/// Singles, two-folds and three-folds for detectors A (signal) and B, C
/// (idler split on a 50:50 coupler).
struct CountRecord {
  double duration_s = 0.0;
  std::uint64_t na = 0, nb = 0, nc = 0;
  std::uint64_t nab = 0, nac = 0, nbc = 0;
  std::uint64_t nabc = 0;

  void validate() const;
};

struct RateRecord {
  double signal_rate = 0.0;       // R_s [1/s]
  double idler_rate = 0.0;        // R_i [1/s]
  double coincidence_rate = 0.0;  // R_CC [1/s]
  double pump_power_W = 0.0;
  double duration_s = 1.0;  // integration time behind the rates

  void validate() const;
};

struct Measurement {
  double value = 0.0;
  double uncertainty = 0.0;
  /// Uncertainty is an upper bound only (value pinned at zero).
  bool one_sided = false;
};

/// g2(0) = N_ABC N_A / (N_AB N_AC) with first-order Poisson propagation.
Measurement g2_conditional(const CountRecord& rec);

struct HeraldingEfficiencies {
  Measurement signal;  // R_CC / R_i
  Measurement idler;   // R_CC / R_s
};

HeraldingEfficiencies heralding_efficiencies(const RateRecord& rates);

/// Coincidences per second per mW of average pump power.
double brightness(const RateRecord& rates);

}  // namespace sfwm
