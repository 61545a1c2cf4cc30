#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sfwm/jsa.hpp"

namespace sfwm {

enum class SchmidtInput {
  magnitude,          // decompose |f| (constant-phase assumption)
  complex_amplitude,  // decompose f including its spectral phase
};

struct SchmidtResult {
  std::vector<double> coefficients;  // p_i = s_i^2 / sum s_j^2, descending
  double purity = 0.0;               // sum p_i^2
  double schmidt_number = 0.0;       // 1 / purity
  int retained_modes = 0;
};

/// Singular values below this fraction of the largest are dropped.
inline constexpr double kSchmidtTruncation = 1e-12;

SchmidtResult schmidt_decompose(const JointSpectrum& js, SchmidtInput input = SchmidtInput::magnitude);
SchmidtResult schmidt_decompose(const Eigen::MatrixXd& amplitude);
SchmidtResult schmidt_decompose(const Eigen::MatrixXcd& amplitude);

/// Hard-edge band-pass filter, passband |lambda - center| <= fwhm / 2.
struct FilterSpec {
  double center_wavelength_m = 0.0;
  double fwhm_m = 0.0;
  double transmittance = 1.0;

  bool passes(double wavelength_m) const;
  void validate() const;
};

struct FilterOutcome {
  JointSpectrum spectrum;  // renormalised
  double rate_retention = 0.0;
  /// Probability the signal survives its filter given the idler survived.
  double heralding_retention_signal = 0.0;
  double heralding_retention_idler = 0.0;
};

FilterOutcome apply_filters(const JointSpectrum& js, const FilterSpec& signal, const FilterSpec& idler);

struct PeakWavelengths {
  double signal_m = 0.0;
  double idler_m = 0.0;
};

/// Marginal maxima, refined by a parabola through the three top samples.
PeakWavelengths marginal_peak_wavelengths(const JointSpectrum& js);

/// Joint probability density on a frequency grid, sum(density) * cell = 1.
struct ProbabilityGrid {
  FrequencyGrid grid;
  Eigen::MatrixXd density;
};

ProbabilityGrid probability_grid(const JointSpectrum& js);

/// Bhattacharyya overlap sum sqrt(p q) dws dwi. Grids must match exactly and
/// both inputs must be normalised to within 1e-6.
double fidelity(const ProbabilityGrid& p, const ProbabilityGrid& q);

struct PumpShapePenalty {
  double gaussian_purity = 0.0;
  double rect_purity = 0.0;
  double relative_penalty = 0.0;  // 1 - rect / gaussian
};

/// Purity for Gaussian and rect pumps of equal intensity FWHM on one shared
/// grid framed by the Gaussian pump.
PumpShapePenalty rect_vs_gaussian_purity_penalty(const PhaseMatchConfig& cfg, const PumpSpec& base_pump,
                                                 int points = 256, double span_sigmas = 6.0);

/// Separable Gaussian blur with standard deviations given in rad/s. Zero
/// padding at the edges, renormalised afterwards.
ProbabilityGrid gaussian_blur(const ProbabilityGrid& in, double sigma_signal, double sigma_idler);
ProbabilityGrid gaussian_blur_serial(const ProbabilityGrid& in, double sigma_signal, double sigma_idler);

/// Instrument model for monochromator scans: blur |f|^2 by the per-axis
/// resolution (FWHM in wavelength), then bilinearly resample onto `target`.
ProbabilityGrid resample_to_measurement_grid(const JointSpectrum& js, const FrequencyGrid& target,
                                             double signal_fwhm_m, double idler_fwhm_m);

}  // namespace sfwm
