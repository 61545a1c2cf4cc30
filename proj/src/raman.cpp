#include "sfwm/raman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

RamanLines stokes_antistokes(double pump_wavelength_m, double phonon_omega) {
  if (!(pump_wavelength_m > 0.0)) throw DomainError("pump wavelength must be > 0");
  const double omega_p = omega_from_wavelength(pump_wavelength_m);
  if (!(phonon_omega >= 0.0)) throw DomainError("phonon frequency must be >= 0");
  if (phonon_omega >= omega_p) throw DomainError("phonon frequency must be below the pump frequency");
  RamanLines r;
  r.stokes_omega = omega_p - phonon_omega;
  r.antistokes_omega = omega_p + phonon_omega;
  r.stokes_wavelength_m = wavelength_from_omega(r.stokes_omega);
  r.antistokes_wavelength_m = wavelength_from_omega(r.antistokes_omega);
  return r;
}

void RamanScalingModel::validate() const {
  if (!(raman_coeff >= 0.0 && idler_coeff >= 0.0 && signal_coeff >= 0.0)) {
    throw ConfigError("Raman scaling coefficients must be >= 0");
  }
}

RamanPrediction predict_counts(const RamanScalingModel& model, double pump_power_W, double length_m) {
  model.validate();
  if (!(pump_power_W > 0.0) || !(length_m > 0.0)) throw DomainError("pump power and fiber length must be > 0");
  RamanPrediction p;
  p.raman = model.raman_coeff * pump_power_W * length_m;
  p.idler = model.idler_coeff * pump_power_W * pump_power_W * length_m;
  p.signal = model.signal_coeff * pump_power_W * pump_power_W * length_m;
  if (model.raman_coeff == 0.0) {
    p.snr = std::numeric_limits<double>::infinity();
    p.snr_infinite = true;
  } else {
    // ratio of the coefficients, independent of L
    p.snr = model.idler_coeff * pump_power_W / model.raman_coeff;
  }
  return p;
}

ChannelFit fit_power_law(const std::vector<double>& power, const std::vector<double>& counts,
                         double fixed_exponent) {
  const std::size_t n = power.size();
  if (n != counts.size()) throw ConfigError("power and count columns differ in length");
  if (n < 3) throw DomainError("power-law fit needs at least 3 points, got " + std::to_string(n));
  std::vector<double> x(n), y(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!(power[r] > 0.0) || !(counts[r] > 0.0)) {
      throw DomainError("row " + std::to_string(r + 1) + ": log fit needs strictly positive power and counts");
    }
    x[r] = std::log(power[r]);
    y[r] = std::log(counts[r]);
  }
  if (std::set<double>(power.begin(), power.end()).size() < 3) {
    throw DomainError("power-law fit needs at least 3 distinct pump powers");
  }
  double xm = 0.0, ym = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    xm += x[r];
    ym += y[r];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    sxx += (x[r] - xm) * (x[r] - xm);
    sxy += (x[r] - xm) * (y[r] - ym);
  }
  if (!(sxx > 0.0)) throw DomainError("degenerate design matrix in power-law fit");

  ChannelFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = ym - fit.exponent * xm;
  fit.prefactor = std::exp(intercept);
  double ssr = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double e = y[r] - intercept - fit.exponent * x[r];
    ssr += e * e;
  }
  const double s2 = ssr / static_cast<double>(n - 2);
  fit.exponent_stderr = std::sqrt(s2 / sxx);
  fit.log_prefactor_stderr = std::sqrt(s2 * (1.0 / n + xm * xm / sxx));
  fit.residual_rms = std::sqrt(ssr / n);

  fit.fixed_exponent = fixed_exponent;
  fit.fixed_prefactor = std::exp(ym - fixed_exponent * xm);
  return fit;
}

PowerSweepFit fit_power_sweep(const PowerSweepData& data) {
  std::vector<double> p, s, i, r;
  for (const auto& row : data) {
    p.push_back(row.pump_power);
    s.push_back(row.signal);
    i.push_back(row.idler);
    r.push_back(row.raman);
  }
  return {fit_power_law(p, s, 2.0), fit_power_law(p, i, 2.0), fit_power_law(p, r, 1.0)};
}

}  // namespace sfwm
