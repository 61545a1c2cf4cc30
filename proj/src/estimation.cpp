#include "sfwm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "sfwm/errors.hpp"

namespace sfwm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinContrast = 0.05;
constexpr double kMinPeriods = 3.0;

struct Centered {
  std::vector<double> x;  // wavelength minus window midpoint [m]
  std::vector<double> y;
  double window = 0.0;
};

Centered center(const FringeSpectrum& s) {
  Centered c;
  const double mid = 0.5 * (s.wavelength_m.front() + s.wavelength_m.back());
  c.window = s.wavelength_m.back() - s.wavelength_m.front();
  c.x.reserve(s.wavelength_m.size());
  for (double l : s.wavelength_m) c.x.push_back(l - mid);
  c.y = s.intensity;
  return c;
}

// Dominant frequency (cycles per metre) of the mean-removed samples.
double periodogram_peak(const Centered& c) {
  const double mean = std::accumulate(c.y.begin(), c.y.end(), 0.0) / c.y.size();
  const double nyquist = 0.5 * (c.y.size() - 1) / c.window;
  const double df = 0.25 / c.window;
  double best_nu = 0.0, best_power = 0.0;
  for (double nu = 0.5 * kMinPeriods / c.window; nu <= nyquist; nu += df) {
    std::complex<double> acc = 0.0;
    for (std::size_t r = 0; r < c.x.size(); ++r) acc += (c.y[r] - mean) * std::polar(1.0, -kTwoPi * nu * c.x[r]);
    if (std::norm(acc) > best_power) {
      best_power = std::norm(acc);
      best_nu = nu;
    }
  }
  double scale = 0.0;
  for (double v : c.y) scale += (v - mean) * (v - mean);
  if (!(best_power > 0.0) || !(scale > 0.0)) throw DomainError("non-oscillatory spectrum: no fringe contrast");
  return best_nu;
}

struct LinearPart {
  Eigen::Vector3d coef;  // A, B (cos), C (sin)
  double ssr = 0.0;
};

LinearPart solve_linear(const Centered& c, double nu) {
  const auto n = static_cast<Eigen::Index>(c.x.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double ph = kTwoPi * nu * c.x[r];
    a(r, 0) = 1.0;
    a(r, 1) = std::cos(ph);
    a(r, 2) = std::sin(ph);
    b(r) = c.y[r];
  }
  LinearPart lp;
  lp.coef = a.colPivHouseholderQr().solve(b);
  lp.ssr = (a * lp.coef - b).squaredNorm();
  return lp;
}

FringeSpacing sinusoid_fit(const Centered& c, double seed_nu) {
  // variable projection: golden-section search on the frequency
  double lo = seed_nu - 0.5 / c.window;
  double hi = seed_nu + 0.5 / c.window;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = solve_linear(c, x1).ssr, f2 = solve_linear(c, x2).ssr;
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * seed_nu; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = solve_linear(c, x1).ssr;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = solve_linear(c, x2).ssr;
    }
  }
  const double nu = 0.5 * (lo + hi);
  const LinearPart lp = solve_linear(c, nu);
  const double a = lp.coef(0), b = lp.coef(1), s = lp.coef(2);
  const double contrast = a > 0.0 ? std::hypot(b, s) / a : 0.0;
  if (contrast < kMinContrast) throw DomainError("non-oscillatory spectrum: fringe contrast below 0.05");
  if (nu * c.window < kMinPeriods) throw DomainError("fewer than 3 fringe periods in the sampled window");

  const auto n = static_cast<Eigen::Index>(c.x.size());
  Eigen::MatrixXd jac(n, 4);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double ph = kTwoPi * nu * c.x[r];
    jac(r, 0) = 1.0;
    jac(r, 1) = std::cos(ph);
    jac(r, 2) = std::sin(ph);
    // frequency column scaled by the window to keep J^T J well conditioned
    jac(r, 3) = kTwoPi * c.x[r] * (-b * std::sin(ph) + s * std::cos(ph)) * c.window;
  }
  const double s2 = lp.ssr / static_cast<double>(n - 4);
  const Eigen::Matrix4d cov = s2 * (jac.transpose() * jac).inverse();
  const double sigma_nu = std::sqrt(std::max(0.0, cov(3, 3))) * c.window;

  FringeSpacing out;
  out.spacing_m = 1.0 / nu;
  out.stderr_m = sigma_nu / (nu * nu);
  out.method = FringeMethod::sinusoid_fit;
  out.contrast = contrast;
  return out;
}

FringeSpacing peak_spacing(const Centered& c, double seed_nu) {
  const std::size_t n = c.x.size();
  const double sample_step = c.window / (n - 1);
  const auto half = std::max<std::size_t>(1, static_cast<std::size_t>(0.5 / seed_nu / sample_step));
  std::vector<double> peaks;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t a = r >= half ? r - half : 0;
    const std::size_t b = std::min(n - 1, r + half);
    if (r == 0 || r == n - 1) continue;
    bool is_max = true;
    for (std::size_t q = a; q <= b && is_max; ++q) {
      if (q != r && (c.y[q] > c.y[r] || (c.y[q] == c.y[r] && q < r))) is_max = false;
    }
    if (!is_max || r < half || r + half >= n) continue;
    const double denom = c.y[r - 1] - 2.0 * c.y[r] + c.y[r + 1];
    const double shift = denom != 0.0 ? 0.5 * (c.y[r - 1] - c.y[r + 1]) / denom : 0.0;
    const double dx = shift >= 0.0 ? c.x[r + 1] - c.x[r] : c.x[r] - c.x[r - 1];
    peaks.push_back(c.x[r] + shift * dx);
  }
  if (peaks.size() < 3) throw DomainError("fewer than 3 fringe periods detected");
  std::vector<double> gaps;
  for (std::size_t p = 1; p < peaks.size(); ++p) gaps.push_back(peaks[p] - peaks[p - 1]);
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (double gap : gaps) var += (gap - mean) * (gap - mean);
  var = gaps.size() > 1 ? var / (gaps.size() - 1) : 0.0;

  const double mean_y = std::accumulate(c.y.begin(), c.y.end(), 0.0) / n;
  const auto [mn, mx] = std::minmax_element(c.y.begin(), c.y.end());
  FringeSpacing out;
  out.spacing_m = mean;
  out.stderr_m = std::sqrt(var / gaps.size());
  out.method = FringeMethod::peak_spacing;
  out.contrast = mean_y > 0.0 ? 0.5 * (*mx - *mn) / mean_y : 0.0;
  if (out.contrast < kMinContrast) throw DomainError("non-oscillatory spectrum: fringe contrast below 0.05");
  return out;
}

}  // namespace

void FringeSpectrum::validate() const {
  if (wavelength_m.size() != intensity.size()) throw ConfigError("fringe spectrum columns differ in length");
  if (wavelength_m.size() < 32) throw ConfigError("fringe spectrum needs at least 32 samples");
  for (std::size_t r = 1; r < wavelength_m.size(); ++r) {
    if (!(wavelength_m[r] > wavelength_m[r - 1])) throw ConfigError("fringe wavelengths must be strictly increasing");
  }
  for (double v : intensity) {
    if (!(v >= 0.0)) throw ConfigError("fringe intensities must be >= 0");
  }
  if (!(fiber_length_m > 0.0)) throw ConfigError("fiber length must be > 0");
  if (!(center_wavelength_m > 0.0)) throw ConfigError("center wavelength must be > 0");
}

FringeSpacing fringe_spacing(const FringeSpectrum& spec, FringeMethod method) {
  spec.validate();
  const Centered c = center(spec);
  const double seed = periodogram_peak(c);
  if (method == FringeMethod::peak_spacing) return peak_spacing(c, seed);

  const FringeSpacing fit = sinusoid_fit(c, seed);
  if (fit.stderr_m <= 0.05 * fit.spacing_m) return fit;
  try {
    const FringeSpacing peaks = peak_spacing(c, seed);
    if (peaks.stderr_m / peaks.spacing_m < fit.stderr_m / fit.spacing_m) return peaks;
  } catch (const DomainError&) {
  }
  return fit;
}

BirefringenceEstimate birefringence_from_fringes(const FringeSpectrum& spec, FringeMethod method,
                                                 double length_rel_uncertainty) {
  if (!(length_rel_uncertainty >= 0.0)) throw ConfigError("length uncertainty must be >= 0");
  BirefringenceEstimate e;
  e.spacing = fringe_spacing(spec, method);
  const double l0 = spec.center_wavelength_m;
  e.delta_n = l0 * l0 / (spec.fiber_length_m * e.spacing.spacing_m);
  const double rel = std::hypot(e.spacing.stderr_m / e.spacing.spacing_m, length_rel_uncertainty);
  e.sigma = e.delta_n * rel;
  return e;
}

}  // namespace sfwm
