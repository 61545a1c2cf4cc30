#include "sfwm/phasematch.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

void PhaseMatchConfig::validate() const {
  fiber.validate();
  if (!(peak_power_W >= 0.0)) throw ConfigError("pump peak power must be >= 0");
  if (!(polarization_factor >= 0.0 && polarization_factor <= 1.0)) {
    throw ConfigError("polarization factor must lie in [0, 1]");
  }
}

double delta_k_general(const PhaseMatchConfig& cfg, const FourWaveModes& m, double pump1_power_W,
                       double pump2_power_W) {
  const auto& f = cfg.fiber;
  const double linear = wave_vector(f, m.pump1_axis, m.pump1) + wave_vector(f, m.pump2_axis, m.pump2) -
                        wave_vector(f, m.signal_axis, m.signal) - wave_vector(f, m.idler_axis, m.idler);
  const double power = pump1_power_W + pump2_power_W + 2.0 * std::sqrt(pump1_power_W * pump2_power_W);
  return linear + (1.0 - cfg.polarization_factor) * f.gamma_per_W_m * power;
}

double delta_k_birefringent(const PhaseMatchConfig& cfg, double omega_p, double omega_s, double omega_i) {
  const auto& f = cfg.fiber;
  const Axis daughter = other_axis(f.pump_axis);
  double dk = 2.0 * wave_vector(f, f.pump_axis, omega_p) - wave_vector(f, daughter, omega_s) -
              wave_vector(f, daughter, omega_i);
  // general form with the peak power split evenly over two degenerate pumps
  if (cfg.include_nonlinear_shift) dk += 2.0 * (1.0 - cfg.polarization_factor) * f.gamma_per_W_m * cfg.peak_power_W;
  return dk;
}

GroupVelocityMismatch gvm_terms(const FiberSpec& fiber, const GvmInput& in) {
  const double kp = group_delay_derivative(fiber, in.pump_axis, in.omega_p);
  return {fiber.length_m * (kp - group_delay_derivative(fiber, in.daughter_axis, in.omega_s)),
          fiber.length_m * (kp - group_delay_derivative(fiber, in.daughter_axis, in.omega_i))};
}

GroupVelocityMismatch gvm_terms(const PhaseMatchConfig& cfg, double omega_p, double omega_s, double omega_i) {
  return gvm_terms(cfg.fiber, {omega_p, omega_s, omega_i, cfg.fiber.pump_axis, other_axis(cfg.fiber.pump_axis)});
}

double phase_matching_angle(const GroupVelocityMismatch& gvm) {
  double theta = -std::atan2(gvm.tau_s, gvm.tau_i);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

namespace {

double refine_root(const PhaseMatchConfig& cfg, double omega_p, double lo, double hi, double f_lo,
                   double tolerance) {
  // Bisection on omega_s; stops on tolerance or when the bracket collapses.
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double f_mid = delta_k_birefringent(cfg, omega_p, mid, 2.0 * omega_p - mid);
    if (std::abs(f_mid) < tolerance || mid == lo || mid == hi) break;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace

PhaseMatchSolution solve_phase_matching(const PhaseMatchConfig& cfg, double pump_wavelength_m,
                                        const SolverOptions& opts) {
  const auto& model = cfg.fiber.dispersion;
  if (!model.contains(pump_wavelength_m)) {
    // produces the standard window message
    refractive_index(model, pump_wavelength_m);
  }
  const double omega_p = omega_from_wavelength(pump_wavelength_m);

  struct Sample {
    double omega_s;
    double dk;
  };
  std::vector<double> roots;
  Sample prev{omega_p, delta_k_birefringent(cfg, omega_p, omega_p, omega_p)};
  for (int j = 1;; ++j) {
    const double lambda_s = pump_wavelength_m - j * opts.scan_step_m;
    if (lambda_s < opts.shortest_signal_m || !model.contains(lambda_s)) break;
    const double omega_s = omega_from_wavelength(lambda_s);
    const double omega_i = 2.0 * omega_p - omega_s;
    if (omega_i <= 0.0 || !model.contains(wavelength_from_omega(omega_i))) break;
    const Sample cur{omega_s, delta_k_birefringent(cfg, omega_p, omega_s, omega_i)};
    if (cur.dk == 0.0) {
      roots.push_back(omega_s);
    } else if (prev.dk != 0.0 && (cur.dk < 0.0) != (prev.dk < 0.0)) {
      roots.push_back(refine_root(cfg, omega_p, prev.omega_s, cur.omega_s, prev.dk, opts.tolerance_rad_per_m));
    }
    prev = cur;
  }
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no phase matching for pump at " << to_nm(pump_wavelength_m) << " nm on the "
        << (cfg.fiber.pump_axis == Axis::slow ? "slow" : "fast") << " axis in the signal band ["
        << to_nm(opts.shortest_signal_m) << ", " << to_nm(pump_wavelength_m) << ") nm";
    throw NoPhaseMatchingError(msg.str());
  }

  // roots are ordered by increasing detuning; the first is closest to the pump
  const double omega_s = roots.front();
  const double omega_i = 2.0 * omega_p - omega_s;
  const auto gvm = gvm_terms(cfg, omega_p, omega_s, omega_i);

  PhaseMatchSolution sol;
  sol.pump_wavelength_m = pump_wavelength_m;
  sol.signal_wavelength_m = wavelength_from_omega(omega_s);
  sol.idler_wavelength_m = wavelength_from_omega(omega_i);
  sol.tau_s = gvm.tau_s;
  sol.tau_i = gvm.tau_i;
  sol.theta_si = phase_matching_angle(gvm);
  sol.residual_delta_k = delta_k_birefringent(cfg, omega_p, omega_s, omega_i);
  if (roots.size() > 1) {
    for (double r : roots) sol.extra_root_signal_wavelengths_m.push_back(wavelength_from_omega(r));
  }
  return sol;
}

std::vector<PhaseMatchSolution> phase_matching_contours_serial(const PhaseMatchConfig& cfg,
                                                               const std::vector<double>& pumps,
                                                               const SolverOptions& opts) {
  std::vector<PhaseMatchSolution> out;
  out.reserve(pumps.size());
  for (double lp : pumps) out.push_back(solve_phase_matching(cfg, lp, opts));
  return out;
}

std::vector<PhaseMatchSolution> phase_matching_contours(const PhaseMatchConfig& cfg,
                                                        const std::vector<double>& pumps,
                                                        const SolverOptions& opts) {
  const long n = static_cast<long>(pumps.size());
  std::vector<PhaseMatchSolution> out(pumps.size());
  std::vector<std::exception_ptr> errors(pumps.size());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < n; ++j) {
    try {
      out[j] = solve_phase_matching(cfg, pumps[j], opts);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

FactorableBandwidth factorable_pump_bandwidth(const PhaseMatchSolution& solution) {
  const double product = solution.tau_s * solution.tau_i;
  if (!(product < 0.0)) {
    throw FactorabilityError(
        "factorability unattainable: tau_s and tau_i must have opposite signs (one daughter faster, "
        "one slower than the pump)");
  }
  FactorableBandwidth bw;
  bw.amplitude_halfwidth_omega = std::sqrt(2.0 / (kGaussianSincFactor * std::abs(product)));
  bw.intensity_fwhm_omega = bw.amplitude_halfwidth_omega * std::sqrt(2.0 * std::log(2.0));
  bw.intensity_fwhm_m = wavelength_width_from_omega_width(bw.intensity_fwhm_omega, solution.pump_wavelength_m);
  return bw;
}

}  // namespace sfwm
