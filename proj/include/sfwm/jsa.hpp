#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sfwm/phasematch.hpp"

namespace sfwm {

enum class PumpShape { gaussian, rect };

/// Transform-limited pump pulse. Bandwidth is the intensity FWHM in wavelength.
struct PumpSpec {
  double center_wavelength_m = 704e-9;
  double fwhm_m = 0.5e-9;
  PumpShape shape = PumpShape::gaussian;
  double peak_power_W = 0.0;

  double center_omega() const;
  double fwhm_omega() const;
  /// 1/e amplitude half-width of the Gaussian profile with the same FWHM.
  double gaussian_halfwidth_omega() const;
  void validate() const;
};

/// L2-normalised spectral amplitude with flat phase.
std::complex<double> pump_amplitude(const PumpSpec& pump, double omega);

/// Integral of alpha(w') alpha(total - w') dw' over the pump support, sampled
/// once on a quadrature grid and tabulated as a function of total = w_s + w_i.
class PumpAutoconvolution {
 public:
  explicit PumpAutoconvolution(const PumpSpec& pump, int quadrature_points = 1024, int table_points = 4097);

  /// Linear interpolation in the cached table; zero outside the support.
  double operator()(double total_omega) const;
  /// Trapezoidal quadrature evaluated on demand.
  double direct(double total_omega) const;

  double support_min() const { return table_min_; }
  double support_max() const { return table_max_; }

 private:
  PumpSpec pump_;
  std::vector<double> nodes_;
  std::vector<double> weights_;  // trapezoid weight times alpha(node)
  double table_min_ = 0.0;
  double table_max_ = 0.0;
  double table_step_ = 0.0;
  std::vector<double> table_;
};

std::complex<double> pump_autoconvolution(const PumpSpec& pump, double total_omega);

/// sinc(x) exp(ix), or exp(-r x^2) exp(ix) when `gaussian`, with x = dk L / 2.
std::complex<double> phase_matching_from_mismatch(double half_phase, bool gaussian);

/// Phase-matching function at (omega_s, omega_i), with the mismatch evaluated
/// at the energy-conserving pump frequency (omega_s + omega_i) / 2.
std::complex<double> phase_matching_function(const PhaseMatchConfig& cfg, double omega_s, double omega_i);

/// Uniform rectangular grid in angular frequency. Rows index the signal.
struct FrequencyGrid {
  double signal_min = 0.0;
  double signal_max = 0.0;
  double idler_min = 0.0;
  double idler_max = 0.0;
  int n_signal = 256;
  int n_idler = 256;

  static FrequencyGrid from_wavelengths(double signal_lo_m, double signal_hi_m, double idler_lo_m,
                                        double idler_hi_m, int n_signal, int n_idler);

  double signal_step() const { return (signal_max - signal_min) / (n_signal - 1); }
  double idler_step() const { return (idler_max - idler_min) / (n_idler - 1); }
  double signal_omega(int j) const { return signal_min + j * signal_step(); }
  double idler_omega(int k) const { return idler_min + k * idler_step(); }
  double cell_area() const { return signal_step() * idler_step(); }
  void validate() const;

  bool operator==(const FrequencyGrid&) const = default;
};

struct JsaOptions {
  bool gaussian_pm_approx = false;
};

struct JointSpectrum {
  FrequencyGrid grid;
  Eigen::MatrixXcd amplitude;  // n_signal x n_idler
  double normalization = 1.0;  // factor applied to the raw amplitude
  PumpSpec pump;
  PhaseMatchConfig config;

  /// |f|^2, a density over (omega_s, omega_i) integrating to one.
  Eigen::MatrixXd probability() const { return amplitude.cwiseAbs2(); }
};

/// Fills f = autoconvolution * phase matching over the grid (OpenMP over rows)
/// and normalises sum |f|^2 dws dwi to one. Throws DomainError when the grid
/// leaves the dispersion window or carries no amplitude.
JointSpectrum build_joint_spectrum(const PhaseMatchConfig& cfg, const PumpSpec& pump, const FrequencyGrid& grid,
                                   const JsaOptions& opts = {});

/// Single-threaded reference for build_joint_spectrum.
JointSpectrum build_joint_spectrum_serial(const PhaseMatchConfig& cfg, const PumpSpec& pump,
                                          const FrequencyGrid& grid, const JsaOptions& opts = {});

/// Grid centred on the phase-matched pair, spanning +/- `span_sigmas` of the
/// Gaussian-approximation amplitude widths along each axis.
FrequencyGrid default_grid(const PhaseMatchConfig& cfg, const PumpSpec& pump, int n_signal = 256,
                           int n_idler = 256, double span_sigmas = 6.0);

struct Marginals {
  std::vector<double> signal_omega;
  std::vector<double> signal_density;
  std::vector<double> idler_omega;
  std::vector<double> idler_density;
};

Marginals marginals(const JointSpectrum& js);

}  // namespace sfwm
