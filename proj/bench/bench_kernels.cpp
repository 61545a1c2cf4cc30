// Times the OpenMP kernels against their serial references and checks that
// both paths produce identical output.
#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "sfwm/analysis.hpp"
#include "sfwm/jsa.hpp"
#include "sfwm/phasematch.hpp"

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-22s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  %s\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 256;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads: %d, grid: %d x %d, best of %d\n", omp_get_max_threads(), points, points, reps);

  sfwm::PhaseMatchConfig cfg;
  cfg.fiber.birefringence = 4.3e-4;
  cfg.fiber.length_m = 0.1;
  sfwm::PumpSpec pump;
  const auto grid = sfwm::default_grid(cfg, pump, points, points);

  sfwm::JointSpectrum js_s, js_p;
  const double t_js_s = best_of(reps, [&] { js_s = sfwm::build_joint_spectrum_serial(cfg, pump, grid); });
  const double t_js_p = best_of(reps, [&] { js_p = sfwm::build_joint_spectrum(cfg, pump, grid); });
  report("joint spectrum", t_js_s, t_js_p, js_s.amplitude == js_p.amplitude);

  const auto pg = sfwm::probability_grid(js_p);
  const double sig = 3.0 * grid.signal_step(), idl = 3.0 * grid.idler_step();
  sfwm::ProbabilityGrid b_s, b_p;
  const double t_b_s = best_of(reps, [&] { b_s = sfwm::gaussian_blur_serial(pg, sig, idl); });
  const double t_b_p = best_of(reps, [&] { b_p = sfwm::gaussian_blur(pg, sig, idl); });
  report("gaussian blur", t_b_s, t_b_p, b_s.density == b_p.density);

  std::vector<double> pumps;
  for (int i = 0; i <= 400; ++i) pumps.push_back((690.0 + 0.1 * i) * 1e-9);
  std::vector<sfwm::PhaseMatchSolution> c_s, c_p;
  const double t_c_s = best_of(reps, [&] { c_s = sfwm::phase_matching_contours_serial(cfg, pumps); });
  const double t_c_p = best_of(reps, [&] { c_p = sfwm::phase_matching_contours(cfg, pumps); });
  bool same = c_s.size() == c_p.size();
  for (std::size_t i = 0; same && i < c_s.size(); ++i) {
    same = c_s[i].signal_wavelength_m == c_p[i].signal_wavelength_m && c_s[i].tau_s == c_p[i].tau_s;
  }
  report("phase-matching sweep", t_c_s, t_c_p, same);
  return 0;
}
