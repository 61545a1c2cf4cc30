#pragma once

#include <vector>

namespace sfwm {

/// Peak of the fused-silica Raman gain, used as the default phonon shift.
inline constexpr double kSilicaRamanShiftHz = 13.2e12;

struct RamanLines {
  double stokes_omega = 0.0;
  double antistokes_omega = 0.0;
  double stokes_wavelength_m = 0.0;
  double antistokes_wavelength_m = 0.0;
};

/// omega_S = omega_p - Omega, omega_A = omega_p + Omega.
RamanLines stokes_antistokes(double pump_wavelength_m, double phonon_omega);

/// Spontaneous-regime coefficients: N_R = a_R P L, N_{s,i} = a_{s,i} P^2 L.
struct RamanScalingModel {
  double raman_coeff = 0.0;   // per W m
  double idler_coeff = 0.0;   // per W^2 m
  double signal_coeff = 0.0;  // per W^2 m

  void validate() const;
};

struct RamanPrediction {
  double signal = 0.0;
  double idler = 0.0;
  double raman = 0.0;
  double snr = 0.0;  // idler / raman; +inf when raman_coeff is zero
  bool snr_infinite = false;
};

RamanPrediction predict_counts(const RamanScalingModel& model, double pump_power_W, double length_m);

struct PowerSweepRow {
  double pump_power = 0.0;
  double signal = 0.0;
  double idler = 0.0;
  double raman = 0.0;
};

using PowerSweepData = std::vector<PowerSweepRow>;

/// log N = log a + b log P, with standard errors, and the same data refitted
/// with b pinned to the spontaneous-regime exponent.
struct ChannelFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double log_prefactor_stderr = 0.0;
  double exponent_stderr = 0.0;
  double residual_rms = 0.0;  // in log space
  double fixed_exponent = 0.0;
  double fixed_prefactor = 0.0;
};

struct PowerSweepFit {
  ChannelFit signal;
  ChannelFit idler;
  ChannelFit raman;
};

/// Needs >= 3 rows with >= 3 distinct powers and strictly positive entries.
PowerSweepFit fit_power_sweep(const PowerSweepData& data);

/// Single-channel log-log least squares.
ChannelFit fit_power_law(const std::vector<double>& power, const std::vector<double>& counts, double fixed_exponent);

}  // namespace sfwm
