#pragma once

#include <numbers>

namespace sfwm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double omega_from_wavelength(double wavelength_m) {
  return kTwoPi * kSpeedOfLight / wavelength_m;
}

constexpr double wavelength_from_omega(double omega) {
  return kTwoPi * kSpeedOfLight / omega;
}

/// Width conversion linearised about `center_wavelength_m`.
constexpr double omega_width_from_wavelength_width(double width_m, double center_wavelength_m) {
  return kTwoPi * kSpeedOfLight * width_m / (center_wavelength_m * center_wavelength_m);
}

constexpr double wavelength_width_from_omega_width(double width_omega, double center_wavelength_m) {
  return center_wavelength_m * center_wavelength_m * width_omega / (kTwoPi * kSpeedOfLight);
}

constexpr double nm(double value) { return value * 1e-9; }
constexpr double to_nm(double meters) { return meters * 1e9; }

}  // namespace sfwm
