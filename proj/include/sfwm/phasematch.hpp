#pragma once

#include <vector>

#include "sfwm/dispersion.hpp"

namespace sfwm {

/// Cross-polarised polarisation factor B; with P1 = P2 = P/2 it yields the
/// (2/3) gamma P nonlinear shift of the degenerate-pump mismatch.
inline constexpr double kCrossPolarizedFactor = 2.0 / 3.0;

struct PhaseMatchConfig {
  FiberSpec fiber;
  double peak_power_W = 0.0;
  double polarization_factor = kCrossPolarizedFactor;
  bool include_nonlinear_shift = false;

  void validate() const;
};

/// Frequencies and polarisation axes of the four fields in the general mismatch.
struct FourWaveModes {
  double pump1 = 0.0;
  double pump2 = 0.0;
  double signal = 0.0;
  double idler = 0.0;
  Axis pump1_axis = Axis::slow;
  Axis pump2_axis = Axis::slow;
  Axis signal_axis = Axis::fast;
  Axis idler_axis = Axis::fast;
};

/// k_p1 + k_p2 - k_s - k_i + (1 - B) gamma (P1 + P2 + 2 sqrt(P1 P2)).
double delta_k_general(const PhaseMatchConfig& cfg, const FourWaveModes& modes, double pump1_power_W,
                       double pump2_power_W);

/// Degenerate single-pump mismatch with the pump on `fiber.pump_axis` and both
/// daughters on the orthogonal axis. Adds (2/3) gamma P only when enabled.
double delta_k_birefringent(const PhaseMatchConfig& cfg, double omega_p, double omega_s, double omega_i);

struct GroupVelocityMismatch {
  double tau_s = 0.0;  // s
  double tau_i = 0.0;  // s
};

struct GvmInput {
  double omega_p = 0.0;
  double omega_s = 0.0;
  double omega_i = 0.0;
  Axis pump_axis = Axis::slow;
  Axis daughter_axis = Axis::fast;
};

/// tau_j = L [k'_p(omega_p) - k'_j(omega_j)].
GroupVelocityMismatch gvm_terms(const FiberSpec& fiber, const GvmInput& in);

/// Same, with axes taken from the fiber's pump assignment.
GroupVelocityMismatch gvm_terms(const PhaseMatchConfig& cfg, double omega_p, double omega_s, double omega_i);

/// Angle of the phase-matching ridge with the signal axis, -atan2(tau_s, tau_i)
/// mapped into [0, pi).
double phase_matching_angle(const GroupVelocityMismatch& gvm);

struct PhaseMatchSolution {
  double pump_wavelength_m = 0.0;
  double signal_wavelength_m = 0.0;
  double idler_wavelength_m = 0.0;
  double tau_s = 0.0;
  double tau_i = 0.0;
  double theta_si = 0.0;  // rad
  double residual_delta_k = 0.0;
  /// Signal wavelengths of every root found in the search band when there is
  /// more than one; empty for the usual single-branch case.
  std::vector<double> extra_root_signal_wavelengths_m;
};

struct SolverOptions {
  double shortest_signal_m = 400e-9;
  double scan_step_m = 0.25e-9;
  double tolerance_rad_per_m = 1e-6;
};

/// Signal/idler pair with zero mismatch and omega_s > omega_p. Throws
/// NoPhaseMatchingError when no sign change exists in the search band.
PhaseMatchSolution solve_phase_matching(const PhaseMatchConfig& cfg, double pump_wavelength_m,
                                        const SolverOptions& opts = {});

/// Contour sweep over pump wavelength (OpenMP over pump points).
std::vector<PhaseMatchSolution> phase_matching_contours(const PhaseMatchConfig& cfg,
                                                        const std::vector<double>& pump_wavelengths_m,
                                                        const SolverOptions& opts = {});

/// Serial reference for the sweep.
std::vector<PhaseMatchSolution> phase_matching_contours_serial(
    const PhaseMatchConfig& cfg, const std::vector<double>& pump_wavelengths_m, const SolverOptions& opts = {});

/// Gaussian approximation constant for sinc(x) ~ exp(-r x^2).
inline constexpr double kGaussianSincFactor = 0.193;

struct FactorableBandwidth {
  double amplitude_halfwidth_omega = 0.0;  // 1/e spectral-amplitude half-width [rad/s]
  double intensity_fwhm_omega = 0.0;       // [rad/s]
  double intensity_fwhm_m = 0.0;           // at the pump wavelength
};

/// Pump bandwidth that removes the spectral cross term in the Gaussian
/// approximation: sqrt(2 / (r |tau_s tau_i|)). Needs tau_s tau_i < 0.
FactorableBandwidth factorable_pump_bandwidth(const PhaseMatchSolution& solution);

}  // namespace sfwm
