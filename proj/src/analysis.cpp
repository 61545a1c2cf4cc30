#include "sfwm/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

namespace {

SchmidtResult from_singular_values(const Eigen::VectorXd& s) {
  if (s.size() == 0 || !(s(0) > 0.0)) throw DomainError("Schmidt decomposition of a zero matrix");
  const double cutoff = kSchmidtTruncation * s(0);
  SchmidtResult r;
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size() && s(i) >= cutoff; ++i) total += s(i) * s(i);
  for (Eigen::Index i = 0; i < s.size() && s(i) >= cutoff; ++i) r.coefficients.push_back(s(i) * s(i) / total);
  r.retained_modes = static_cast<int>(r.coefficients.size());
  for (double p : r.coefficients) r.purity += p * p;
  r.schmidt_number = 1.0 / r.purity;
  return r;
}

const double kFwhmToSigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));

std::vector<double> gaussian_kernel(double sigma, double step) {
  if (sigma <= 0.0) return {1.0};
  const int half = std::max(1, static_cast<int>(std::ceil(5.0 * sigma / step)));
  std::vector<double> k(2 * half + 1);
  double sum = 0.0;
  for (int t = -half; t <= half; ++t) {
    const double x = t * step / sigma;
    k[t + half] = std::exp(-0.5 * x * x);
    sum += k[t + half];
  }
  for (double& v : k) v /= sum;
  return k;
}

// out(j, :) = sum_t kernel[t] in(j + t - half, :), rows outside are zero.
void blur_rows_into(const Eigen::MatrixXd& in, const std::vector<double>& kernel, Eigen::MatrixXd& out, long j) {
  const long half = static_cast<long>(kernel.size() / 2);
  const long n = in.rows();
  out.row(j).setZero();
  for (long t = -half; t <= half; ++t) {
    const long src = j + t;
    if (src < 0 || src >= n) continue;
    out.row(j) += kernel[t + half] * in.row(src);
  }
}

void normalise(ProbabilityGrid& p) {
  const double mass = p.density.sum() * p.grid.cell_area();
  if (!(mass > 0.0)) throw DomainError("probability grid carries no weight");
  p.density /= mass;
}

template <bool Parallel>
ProbabilityGrid blur_impl(const ProbabilityGrid& in, double sigma_signal, double sigma_idler) {
  if (sigma_signal < 0.0 || sigma_idler < 0.0) throw ConfigError("blur width must be >= 0");
  const auto ks = gaussian_kernel(sigma_signal, in.grid.signal_step());
  const auto ki = gaussian_kernel(sigma_idler, in.grid.idler_step());

  Eigen::MatrixXd tmp(in.density.rows(), in.density.cols());
  const long rows = in.density.rows();
#pragma omp parallel for schedule(static) if (Parallel)
  for (long j = 0; j < rows; ++j) blur_rows_into(in.density, ks, tmp, j);

  // idler axis: blur rows of the transpose
  const Eigen::MatrixXd tmp_t = tmp.transpose();
  Eigen::MatrixXd out_t(tmp_t.rows(), tmp_t.cols());
  const long cols = tmp_t.rows();
#pragma omp parallel for schedule(static) if (Parallel)
  for (long k = 0; k < cols; ++k) blur_rows_into(tmp_t, ki, out_t, k);

  ProbabilityGrid out{in.grid, out_t.transpose()};
  normalise(out);
  return out;
}

double axis_position(double omega, double lo, double step, int n, const char* axis) {
  const double pos = (omega - lo) / step;
  const double slack = 1e-9;
  if (pos < -slack || pos > (n - 1) + slack) {
    throw DomainError(std::string("target grid extends beyond the source grid on the ") + axis + " axis");
  }
  return std::clamp(pos, 0.0, static_cast<double>(n - 1));
}

}  // namespace

SchmidtResult schmidt_decompose(const Eigen::MatrixXd& amplitude) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(amplitude);
  return from_singular_values(svd.singularValues());
}

SchmidtResult schmidt_decompose(const Eigen::MatrixXcd& amplitude) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(amplitude);
  return from_singular_values(svd.singularValues());
}

SchmidtResult schmidt_decompose(const JointSpectrum& js, SchmidtInput input) {
  if (input == SchmidtInput::complex_amplitude) return schmidt_decompose(js.amplitude);
  return schmidt_decompose(Eigen::MatrixXd(js.amplitude.cwiseAbs()));
}

bool FilterSpec::passes(double wavelength_m) const {
  return std::abs(wavelength_m - center_wavelength_m) <= 0.5 * fwhm_m;
}

void FilterSpec::validate() const {
  if (!(center_wavelength_m > 0.0)) throw ConfigError("filter center must be > 0");
  if (!(fwhm_m > 0.0)) throw ConfigError("filter width must be > 0");
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) throw ConfigError("filter transmittance must lie in [0, 1]");
}

FilterOutcome apply_filters(const JointSpectrum& js, const FilterSpec& signal, const FilterSpec& idler) {
  signal.validate();
  idler.validate();
  const auto& g = js.grid;
  Eigen::VectorXd ts(g.n_signal), ti(g.n_idler);
  for (int j = 0; j < g.n_signal; ++j) {
    ts(j) = signal.passes(wavelength_from_omega(g.signal_omega(j))) ? signal.transmittance : 0.0;
  }
  for (int k = 0; k < g.n_idler; ++k) {
    ti(k) = idler.passes(wavelength_from_omega(g.idler_omega(k))) ? idler.transmittance : 0.0;
  }
  const Eigen::MatrixXd p = js.probability();
  const double total = p.sum();
  const double both = (ts.asDiagonal() * p * ti.asDiagonal()).sum();
  const double idler_only = (p * ti.asDiagonal()).sum();
  const double signal_only = (ts.asDiagonal() * p).sum();
  if (!(both > 0.0)) throw DomainError("filters exclude spectrum: no joint amplitude inside both passbands");

  FilterOutcome out{js, both / total, both / idler_only, both / signal_only};
  const Eigen::VectorXd as = ts.cwiseSqrt();
  const Eigen::VectorXd ai = ti.cwiseSqrt();
  out.spectrum.amplitude = as.asDiagonal() * js.amplitude * ai.asDiagonal();
  const double scale = 1.0 / std::sqrt(out.spectrum.amplitude.cwiseAbs2().sum() * g.cell_area());
  out.spectrum.amplitude *= scale;
  out.spectrum.normalization *= scale;
  return out;
}

PeakWavelengths marginal_peak_wavelengths(const JointSpectrum& js) {
  const auto m = marginals(js);
  auto peak = [](const std::vector<double>& x, const std::vector<double>& y) {
    const auto it = std::max_element(y.begin(), y.end());
    const auto i = static_cast<std::size_t>(it - y.begin());
    if (i == 0 || i + 1 == y.size()) return x[i];
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double shift = denom != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / denom : 0.0;
    return x[i] + shift * (x[i + 1] - x[i]);
  };
  return {wavelength_from_omega(peak(m.signal_omega, m.signal_density)),
          wavelength_from_omega(peak(m.idler_omega, m.idler_density))};
}

ProbabilityGrid probability_grid(const JointSpectrum& js) { return {js.grid, js.probability()}; }

double fidelity(const ProbabilityGrid& p, const ProbabilityGrid& q) {
  if (!(p.grid == q.grid) || p.density.rows() != q.density.rows() || p.density.cols() != q.density.cols()) {
    throw DomainError("fidelity needs both distributions on the same grid");
  }
  const double cell = p.grid.cell_area();
  for (const auto* d : {&p, &q}) {
    if (std::abs(d->density.sum() * cell - 1.0) > 1e-6 || d->density.minCoeff() < 0.0) {
      throw DomainError("fidelity inputs must be normalised probability densities");
    }
  }
  const double f = (p.density.array() * q.density.array()).sqrt().sum() * cell;
  return std::clamp(f, 0.0, 1.0);
}

PumpShapePenalty rect_vs_gaussian_purity_penalty(const PhaseMatchConfig& cfg, const PumpSpec& base_pump, int points,
                                                 double span_sigmas) {
  PumpSpec gauss = base_pump;
  gauss.shape = PumpShape::gaussian;
  PumpSpec rect = base_pump;
  rect.shape = PumpShape::rect;
  const auto grid = default_grid(cfg, gauss, points, points, span_sigmas);
  PumpShapePenalty r;
  r.gaussian_purity = schmidt_decompose(build_joint_spectrum(cfg, gauss, grid)).purity;
  r.rect_purity = schmidt_decompose(build_joint_spectrum(cfg, rect, grid)).purity;
  r.relative_penalty = 1.0 - r.rect_purity / r.gaussian_purity;
  return r;
}

ProbabilityGrid gaussian_blur(const ProbabilityGrid& in, double sigma_signal, double sigma_idler) {
  return blur_impl<true>(in, sigma_signal, sigma_idler);
}

ProbabilityGrid gaussian_blur_serial(const ProbabilityGrid& in, double sigma_signal, double sigma_idler) {
  return blur_impl<false>(in, sigma_signal, sigma_idler);
}

ProbabilityGrid resample_to_measurement_grid(const JointSpectrum& js, const FrequencyGrid& target,
                                             double signal_fwhm_m, double idler_fwhm_m) {
  if (signal_fwhm_m < 0.0 || idler_fwhm_m < 0.0) throw ConfigError("instrument width must be >= 0");
  target.validate();
  const auto& g = js.grid;
  const double center_s = wavelength_from_omega(0.5 * (g.signal_min + g.signal_max));
  const double center_i = wavelength_from_omega(0.5 * (g.idler_min + g.idler_max));
  const double sigma_s = omega_width_from_wavelength_width(signal_fwhm_m, center_s) * kFwhmToSigma;
  const double sigma_i = omega_width_from_wavelength_width(idler_fwhm_m, center_i) * kFwhmToSigma;
  const ProbabilityGrid blurred = gaussian_blur(probability_grid(js), sigma_s, sigma_i);

  ProbabilityGrid out{target, Eigen::MatrixXd(target.n_signal, target.n_idler)};
  const auto& d = blurred.density;
  for (int j = 0; j < target.n_signal; ++j) {
    const double ps = axis_position(target.signal_omega(j), g.signal_min, g.signal_step(), g.n_signal, "signal");
    const int j0 = std::min(static_cast<int>(ps), g.n_signal - 2);
    const double fs = ps - j0;
    for (int k = 0; k < target.n_idler; ++k) {
      const double pi = axis_position(target.idler_omega(k), g.idler_min, g.idler_step(), g.n_idler, "idler");
      const int k0 = std::min(static_cast<int>(pi), g.n_idler - 2);
      const double fi = pi - k0;
      out.density(j, k) = (1 - fs) * (1 - fi) * d(j0, k0) + fs * (1 - fi) * d(j0 + 1, k0) +
                          (1 - fs) * fi * d(j0, k0 + 1) + fs * fi * d(j0 + 1, k0 + 1);
    }
  }
  normalise(out);
  return out;
}

}  // namespace sfwm
