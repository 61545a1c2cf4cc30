#include "sfwm/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

namespace {

[[noreturn]] void throw_out_of_window(const SellmeierModel& model, double wavelength_m) {
  std::ostringstream msg;
  msg << "wavelength " << to_nm(wavelength_m) << " nm outside the validity window ["
      << to_nm(model.min_wavelength_m) << ", " << to_nm(model.max_wavelength_m) << "] nm of '"
      << model.name << "'";
  throw DomainError(msg.str());
}

double index_squared(const SellmeierModel& model, double l2_um2) {
  double n2 = 1.0;
  for (std::size_t j = 0; j < 3; ++j) n2 += model.b[j] * l2_um2 / (l2_um2 - model.c_um2[j]);
  return n2;
}

}  // namespace

SellmeierModel SellmeierModel::fused_silica() {
  // I. H. Malitson, J. Opt. Soc. Am. 55, 1205 (1965); resonances 0.0684043,
  // 0.1162414 and 9.896161 um.
  SellmeierModel m;
  m.name = "fused_silica_malitson";
  m.b = {0.6961663, 0.4079426, 0.8974794};
  m.c_um2 = {0.0684043 * 0.0684043, 0.1162414 * 0.1162414, 9.896161 * 9.896161};
  m.min_wavelength_m = 210e-9;
  m.max_wavelength_m = 3.7e-6;
  return m;
}

void SellmeierModel::validate() const {
  if (!(min_wavelength_m > 0.0) || !(max_wavelength_m > min_wavelength_m)) {
    throw ConfigError("sellmeier '" + name + "': window must satisfy 0 < min < max");
  }
  for (std::size_t j = 0; j < 3; ++j) {
    const double pole_um = std::sqrt(std::abs(c_um2[j]));
    if (b[j] != 0.0 && pole_um * 1e-6 >= min_wavelength_m && pole_um * 1e-6 <= max_wavelength_m) {
      throw ConfigError("sellmeier '" + name + "': resonance inside the validity window");
    }
  }
}

void FiberSpec::validate() const {
  if (!(length_m > 0.0)) throw ConfigError("fiber length must be > 0");
  if (!(birefringence >= 0.0)) throw ConfigError("fiber birefringence must be >= 0");
  if (!(gamma_per_W_m >= 0.0)) throw ConfigError("fiber nonlinear parameter must be >= 0");
  if (!(derivative_step_rel > 0.0 && derivative_step_rel < 1e-2)) {
    throw ConfigError("derivative step must lie in (0, 1e-2)");
  }
  dispersion.validate();
}

double refractive_index(const SellmeierModel& model, double wavelength_m) {
  if (!model.contains(wavelength_m)) throw_out_of_window(model, wavelength_m);
  const double l_um = wavelength_m * 1e6;
  return std::sqrt(index_squared(model, l_um * l_um));
}

double refractive_index_slope(const SellmeierModel& model, double wavelength_m) {
  if (!model.contains(wavelength_m)) throw_out_of_window(model, wavelength_m);
  const double l_um = wavelength_m * 1e6;
  const double l2 = l_um * l_um;
  // d(n^2)/dl = sum -2 B C l / (l^2 - C)^2, per micrometre
  double dn2 = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double d = l2 - model.c_um2[j];
    dn2 += -2.0 * model.b[j] * model.c_um2[j] * l_um / (d * d);
  }
  const double n = std::sqrt(index_squared(model, l2));
  return dn2 / (2.0 * n) * 1e6;
}

double wave_vector(const FiberSpec& fiber, Axis axis, double omega) {
  const double n = refractive_index(fiber.dispersion, wavelength_from_omega(omega));
  const double offset = axis == Axis::slow ? fiber.birefringence : 0.0;
  return omega * (n + offset) / kSpeedOfLight;
}

double group_delay_derivative_fd(const FiberSpec& fiber, Axis axis, double omega, double step_rel) {
  const double h = step_rel * omega;
  const auto& model = fiber.dispersion;
  if (!model.contains(wavelength_from_omega(omega + h)) ||
      !model.contains(wavelength_from_omega(omega - h))) {
    std::ostringstream msg;
    msg << "group delay at " << to_nm(wavelength_from_omega(omega))
        << " nm needs one derivative step of margin inside the window of '" << model.name << "'";
    throw DomainError(msg.str());
  }
  return (wave_vector(fiber, axis, omega + h) - wave_vector(fiber, axis, omega - h)) / (2.0 * h);
}

double group_delay_derivative_analytic(const FiberSpec& fiber, Axis axis, double omega) {
  // k' = (n - lambda dn/dlambda) / c, plus dn/c on the slow axis
  const double lambda = wavelength_from_omega(omega);
  const double n = refractive_index(fiber.dispersion, lambda);
  const double slope = refractive_index_slope(fiber.dispersion, lambda);
  const double offset = axis == Axis::slow ? fiber.birefringence : 0.0;
  return (n - lambda * slope + offset) / kSpeedOfLight;
}

double group_delay_derivative(const FiberSpec& fiber, Axis axis, double omega) {
  if (fiber.derivative == DerivativeMethod::analytic) {
    return group_delay_derivative_analytic(fiber, axis, omega);
  }
  return group_delay_derivative_fd(fiber, axis, omega, fiber.derivative_step_rel);
}

}  // namespace sfwm
