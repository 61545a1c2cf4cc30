#include "sfwm/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

namespace {

const double kSqrt2Ln2 = std::sqrt(2.0 * std::log(2.0));

void require_in_window(const SellmeierModel& model, double omega, const char* what) {
  const double lambda = wavelength_from_omega(omega);
  if (!model.contains(lambda)) {
    std::ostringstream msg;
    msg << "frequency grid " << what << " at " << to_nm(lambda) << " nm lies outside the validity window ["
        << to_nm(model.min_wavelength_m) << ", " << to_nm(model.max_wavelength_m) << "] nm";
    throw DomainError(msg.str());
  }
}

void fill_row(const PhaseMatchConfig& cfg, const PumpAutoconvolution& conv, const FrequencyGrid& grid,
              const JsaOptions& opts, int j, Eigen::MatrixXcd& f) {
  const double omega_s = grid.signal_omega(j);
  for (int k = 0; k < grid.n_idler; ++k) {
    const double omega_i = grid.idler_omega(k);
    const double a = conv(omega_s + omega_i);
    if (a == 0.0) {
      f(j, k) = 0.0;
      continue;
    }
    const double dk = delta_k_birefringent(cfg, 0.5 * (omega_s + omega_i), omega_s, omega_i);
    f(j, k) = a * phase_matching_from_mismatch(0.5 * dk * cfg.fiber.length_m, opts.gaussian_pm_approx);
  }
}

JointSpectrum finish(const PhaseMatchConfig& cfg, const PumpSpec& pump, const FrequencyGrid& grid,
                     Eigen::MatrixXcd f) {
  const double mass = f.cwiseAbs2().sum() * grid.cell_area();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("empty spectrum: the frequency grid misses the phase-matched, pump-allowed region");
  }
  const double scale = 1.0 / std::sqrt(mass);
  f *= scale;
  return JointSpectrum{grid, std::move(f), scale, pump, cfg};
}

void validate_inputs(const PhaseMatchConfig& cfg, const PumpSpec& pump, const FrequencyGrid& grid) {
  cfg.validate();
  pump.validate();
  grid.validate();
  const auto& model = cfg.fiber.dispersion;
  require_in_window(model, grid.signal_min, "signal edge");
  require_in_window(model, grid.signal_max, "signal edge");
  require_in_window(model, grid.idler_min, "idler edge");
  require_in_window(model, grid.idler_max, "idler edge");
}

}  // namespace

double PumpSpec::center_omega() const { return omega_from_wavelength(center_wavelength_m); }

double PumpSpec::fwhm_omega() const { return omega_width_from_wavelength_width(fwhm_m, center_wavelength_m); }

double PumpSpec::gaussian_halfwidth_omega() const { return fwhm_omega() / kSqrt2Ln2; }

void PumpSpec::validate() const {
  if (!(center_wavelength_m > 0.0)) throw ConfigError("pump center wavelength must be > 0");
  if (!(fwhm_m > 0.0)) throw ConfigError("pump bandwidth must be > 0");
  if (!(fwhm_m < center_wavelength_m)) throw ConfigError("pump bandwidth must be smaller than its wavelength");
  if (!(peak_power_W >= 0.0)) throw ConfigError("pump peak power must be >= 0");
}

std::complex<double> pump_amplitude(const PumpSpec& pump, double omega) {
  const double detuning = omega - pump.center_omega();
  if (pump.shape == PumpShape::gaussian) {
    const double w = pump.gaussian_halfwidth_omega();
    // int exp(-2 x^2 / w^2) dx = w sqrt(pi / 2)
    const double norm = 1.0 / std::sqrt(w * std::sqrt(std::numbers::pi / 2.0));
    return norm * std::exp(-detuning * detuning / (w * w));
  }
  const double width = pump.fwhm_omega();
  return std::abs(detuning) <= 0.5 * width ? 1.0 / std::sqrt(width) : 0.0;
}

PumpAutoconvolution::PumpAutoconvolution(const PumpSpec& pump, int quadrature_points, int table_points)
    : pump_(pump) {
  pump_.validate();
  if (quadrature_points < 3 || table_points < 3) throw ConfigError("autoconvolution needs >= 3 points");
  const double w0 = pump_.center_omega();
  const double half = pump_.shape == PumpShape::gaussian ? 5.0 * pump_.fwhm_omega() : 0.5 * pump_.fwhm_omega();
  const double lo = w0 - half;
  const double hi = w0 + half;
  const double h = (hi - lo) / (quadrature_points - 1);
  nodes_.resize(quadrature_points);
  weights_.assign(quadrature_points, h);
  for (int m = 0; m < quadrature_points; ++m) nodes_[m] = lo + m * h;
  weights_.front() = weights_.back() = 0.5 * h;
  for (int m = 0; m < quadrature_points; ++m) weights_[m] *= pump_amplitude(pump_, nodes_[m]).real();

  table_min_ = 2.0 * lo;
  table_max_ = 2.0 * hi;
  table_step_ = (table_max_ - table_min_) / (table_points - 1);
  table_.resize(table_points);
  for (int t = 0; t < table_points; ++t) table_[t] = direct(table_min_ + t * table_step_);
}

double PumpAutoconvolution::direct(double total_omega) const {
  double acc = 0.0;
  for (std::size_t m = 0; m < nodes_.size(); ++m) {
    acc += weights_[m] * pump_amplitude(pump_, total_omega - nodes_[m]).real();
  }
  return acc;
}

double PumpAutoconvolution::operator()(double total_omega) const {
  if (total_omega <= table_min_ || total_omega >= table_max_) return 0.0;
  const double pos = (total_omega - table_min_) / table_step_;
  const auto t = std::min(static_cast<std::size_t>(pos), table_.size() - 2);
  const double frac = pos - static_cast<double>(t);
  return table_[t] + frac * (table_[t + 1] - table_[t]);
}

std::complex<double> pump_autoconvolution(const PumpSpec& pump, double total_omega) {
  return PumpAutoconvolution(pump, 1024, 3).direct(total_omega);
}

std::complex<double> phase_matching_from_mismatch(double x, bool gaussian) {
  double envelope;
  if (gaussian) {
    envelope = std::exp(-kGaussianSincFactor * x * x);
  } else {
    envelope = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  }
  return std::polar(envelope, x);
}

std::complex<double> phase_matching_function(const PhaseMatchConfig& cfg, double omega_s, double omega_i) {
  const double dk = delta_k_birefringent(cfg, 0.5 * (omega_s + omega_i), omega_s, omega_i);
  return phase_matching_from_mismatch(0.5 * dk * cfg.fiber.length_m, false);
}

FrequencyGrid FrequencyGrid::from_wavelengths(double signal_lo_m, double signal_hi_m, double idler_lo_m,
                                              double idler_hi_m, int n_signal, int n_idler) {
  FrequencyGrid g;
  g.signal_min = omega_from_wavelength(std::max(signal_lo_m, signal_hi_m));
  g.signal_max = omega_from_wavelength(std::min(signal_lo_m, signal_hi_m));
  g.idler_min = omega_from_wavelength(std::max(idler_lo_m, idler_hi_m));
  g.idler_max = omega_from_wavelength(std::min(idler_lo_m, idler_hi_m));
  g.n_signal = n_signal;
  g.n_idler = n_idler;
  g.validate();
  return g;
}

void FrequencyGrid::validate() const {
  if (n_signal < 2 || n_idler < 2) throw ConfigError("frequency grid needs at least 2 points per axis");
  if (!(signal_max > signal_min) || !(idler_max > idler_min) || !(signal_min > 0.0) || !(idler_min > 0.0)) {
    throw ConfigError("frequency grid ranges must be positive and strictly ordered");
  }
}

JointSpectrum build_joint_spectrum_serial(const PhaseMatchConfig& cfg, const PumpSpec& pump,
                                          const FrequencyGrid& grid, const JsaOptions& opts) {
  validate_inputs(cfg, pump, grid);
  const PumpAutoconvolution conv(pump);
  Eigen::MatrixXcd f(grid.n_signal, grid.n_idler);
  for (int j = 0; j < grid.n_signal; ++j) fill_row(cfg, conv, grid, opts, j, f);
  return finish(cfg, pump, grid, std::move(f));
}

JointSpectrum build_joint_spectrum(const PhaseMatchConfig& cfg, const PumpSpec& pump, const FrequencyGrid& grid,
                                   const JsaOptions& opts) {
  validate_inputs(cfg, pump, grid);
  const PumpAutoconvolution conv(pump);
  Eigen::MatrixXcd f(grid.n_signal, grid.n_idler);
  // grid edges were checked above, so rows cannot throw
#pragma omp parallel for schedule(static)
  for (int j = 0; j < grid.n_signal; ++j) fill_row(cfg, conv, grid, opts, j, f);
  return finish(cfg, pump, grid, std::move(f));
}

FrequencyGrid default_grid(const PhaseMatchConfig& cfg, const PumpSpec& pump, int n_signal, int n_idler,
                           double span_sigmas) {
  pump.validate();
  const auto sol = solve_phase_matching(cfg, pump.center_wavelength_m);
  const double omega_s = omega_from_wavelength(sol.signal_wavelength_m);
  const double omega_i = omega_from_wavelength(sol.idler_wavelength_m);

  // Gaussian approximation: f ~ exp(-v^T M v / 2) in detunings v = (v_s, v_i),
  // M = (1/w_p^2) [1 1; 1 1] + (r/2) tau tau^T.
  const double wp = pump.gaussian_halfwidth_omega();
  Eigen::Matrix2d m = Eigen::Matrix2d::Constant(1.0 / (wp * wp));
  const Eigen::Vector2d tau(sol.tau_s, sol.tau_i);
  m += 0.5 * kGaussianSincFactor * tau * tau.transpose();
  double sigma_s = wp;
  double sigma_i = wp;
  if (m.determinant() > 0.0) {
    const Eigen::Matrix2d cov = m.inverse();
    sigma_s = std::sqrt(cov(0, 0));
    sigma_i = std::sqrt(cov(1, 1));
  }
  FrequencyGrid g;
  g.signal_min = omega_s - span_sigmas * sigma_s;
  g.signal_max = omega_s + span_sigmas * sigma_s;
  g.idler_min = omega_i - span_sigmas * sigma_i;
  g.idler_max = omega_i + span_sigmas * sigma_i;
  g.n_signal = n_signal;
  g.n_idler = n_idler;
  g.validate();
  return g;
}

Marginals marginals(const JointSpectrum& js) {
  const auto& g = js.grid;
  const Eigen::MatrixXd p = js.probability();
  Marginals m;
  m.signal_omega.resize(g.n_signal);
  m.signal_density.resize(g.n_signal);
  m.idler_omega.resize(g.n_idler);
  m.idler_density.resize(g.n_idler);
  for (int j = 0; j < g.n_signal; ++j) {
    m.signal_omega[j] = g.signal_omega(j);
    m.signal_density[j] = p.row(j).sum() * g.idler_step();
  }
  for (int k = 0; k < g.n_idler; ++k) {
    m.idler_omega[k] = g.idler_omega(k);
    m.idler_density[k] = p.col(k).sum() * g.signal_step();
  }
  return m;
}

}  // namespace sfwm
