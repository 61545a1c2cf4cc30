#pragma once

#include <array>
#include <string>

namespace sfwm {

/// Three-term Sellmeier model, n^2 = 1 + sum_j B_j l^2 / (l^2 - C_j) with l in
/// micrometres and C_j in um^2. Evaluation is restricted to the fit window.
struct SellmeierModel {
  std::string name;
  std::array<double, 3> b{};
  std::array<double, 3> c_um2{};
  double min_wavelength_m = 0.0;
  double max_wavelength_m = 0.0;

  /// Malitson (1965) fused silica, fitted over 0.21-3.71 um.
  static SellmeierModel fused_silica();

  bool contains(double wavelength_m) const {
    return wavelength_m >= min_wavelength_m && wavelength_m <= max_wavelength_m;
  }
  void validate() const;
};

enum class Axis { slow, fast };

inline Axis other_axis(Axis a) { return a == Axis::slow ? Axis::fast : Axis::slow; }

enum class DerivativeMethod { central_difference, analytic };

/// Two-axis birefringent fiber: both axes share the material index, the slow
/// axis carries an additional constant offset `birefringence`.
struct FiberSpec {
  double length_m = 0.1;
  double birefringence = 0.0;
  double gamma_per_W_m = 0.0;
  SellmeierModel dispersion = SellmeierModel::fused_silica();
  Axis pump_axis = Axis::slow;
  DerivativeMethod derivative = DerivativeMethod::central_difference;
  double derivative_step_rel = 1e-6;

  void validate() const;
};

/// Throws DomainError when `wavelength_m` lies outside the model window.
double refractive_index(const SellmeierModel& model, double wavelength_m);

/// dn/dlambda [1/m], analytic.
double refractive_index_slope(const SellmeierModel& model, double wavelength_m);

/// k = omega (n + [slow] dn) / c.
double wave_vector(const FiberSpec& fiber, Axis axis, double omega);

/// dk/domega using the method selected in `fiber`.
double group_delay_derivative(const FiberSpec& fiber, Axis axis, double omega);

double group_delay_derivative_fd(const FiberSpec& fiber, Axis axis, double omega, double step_rel);
double group_delay_derivative_analytic(const FiberSpec& fiber, Axis axis, double omega);

}  // namespace sfwm
