#pragma once

#include <doctest.h>

#include "sfwm/jsa.hpp"
#include "sfwm/phasematch.hpp"
#include "sfwm/units.hpp"

namespace sfwm::test {

// Purely relative comparison; doctest's default scale of 1 would turn an
// epsilon into an absolute tolerance for small SI quantities.
inline doctest::Approx approx(double v) { return doctest::Approx(v).scale(0.0); }

// HB800G-like fiber: 10 cm, dn = 4.3e-4, pump on the slow axis.
inline PhaseMatchConfig hb800g(double length_m = 0.1) {
  PhaseMatchConfig cfg;
  cfg.fiber.length_m = length_m;
  cfg.fiber.birefringence = 4.3e-4;
  return cfg;
}

inline PumpSpec gaussian_pump(double fwhm_nm, double center_nm = 704.0) {
  PumpSpec p;
  p.center_wavelength_m = nm(center_nm);
  p.fwhm_m = nm(fwhm_nm);
  return p;
}

inline std::string source_path(const std::string& rel) { return std::string(SFWM_SOURCE_DIR) + "/" + rel; }

}  // namespace sfwm::test
