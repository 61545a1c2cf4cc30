#pragma once

#include <vector>

namespace sfwm {

/// Polarisation-interference spectrum behind a polariser at 45 degrees.
struct FringeSpectrum {
  std::vector<double> wavelength_m;  // strictly increasing
  std::vector<double> intensity;     // >= 0
  double fiber_length_m = 0.0;
  double center_wavelength_m = 0.0;

  void validate() const;
};

enum class FringeMethod { sinusoid_fit, peak_spacing };

struct FringeSpacing {
  double spacing_m = 0.0;
  double stderr_m = 0.0;
  FringeMethod method = FringeMethod::sinusoid_fit;
  double contrast = 0.0;  // fitted B / A
};

/// Least-squares fit of A + B cos(2 pi lambda / dl + phi), seeded from the
/// periodogram peak. Falls back to peak spacing when the fit is poor
/// (relative error above 5%) and the peak estimate is tighter.
FringeSpacing fringe_spacing(const FringeSpectrum& spec, FringeMethod method = FringeMethod::sinusoid_fit);

struct BirefringenceEstimate {
  double delta_n = 0.0;
  double sigma = 0.0;
  FringeSpacing spacing;
};

/// dn = lambda0^2 / (L dl) with lambda0 from the spectrum metadata.
BirefringenceEstimate birefringence_from_fringes(const FringeSpectrum& spec,
                                                 FringeMethod method = FringeMethod::sinusoid_fit,
                                                 double length_rel_uncertainty = 0.01);

}  // namespace sfwm
