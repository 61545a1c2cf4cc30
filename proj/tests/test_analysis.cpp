#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "sfwm/analysis.hpp"
#include "sfwm/errors.hpp"

using namespace sfwm;
using sfwm::test::approx;
using sfwm::test::gaussian_pump;
using sfwm::test::hb800g;

namespace {

// Purity of the reduced state from rho = A A^T without any decomposition:
// Tr(rho^2) / Tr(rho)^2.
double trace_purity_oracle(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd rho = a * a.transpose();
  return rho.squaredNorm() / (rho.trace() * rho.trace());
}

JointSpectrum broadband_spectrum(int n = 128) {
  const auto grid = FrequencyGrid::from_wavelengths(nm(605), nm(617), nm(822), nm(838), n, n);
  return build_joint_spectrum(hb800g(), gaussian_pump(5.4), grid);
}

double purity_of_density(const ProbabilityGrid& p) {
  return schmidt_decompose(Eigen::MatrixXd(p.density.cwiseSqrt())).purity;
}

}  // namespace

TEST_CASE("Schmidt decomposition of a product state") {
  Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(50, 0.1, 2.0);
  Eigen::VectorXd h = Eigen::VectorXd::LinSpaced(40, 3.0, -1.0);
  const auto r = schmidt_decompose(Eigen::MatrixXd(g * h.transpose()));
  CHECK(r.purity == approx(1.0).epsilon(1e-9));
  CHECK(r.schmidt_number == approx(1.0).epsilon(1e-9));
  CHECK(r.retained_modes == 1);
}

TEST_CASE("Schmidt coefficients are a descending distribution") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd a(30, 20);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
  const auto r = schmidt_decompose(a);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    sum += r.coefficients[i];
    if (i) CHECK(r.coefficients[i] <= r.coefficients[i - 1]);
  }
  CHECK(sum == approx(1.0).epsilon(1e-12));
  CHECK(r.purity == approx(trace_purity_oracle(a)).epsilon(1e-10));
  CHECK(r.schmidt_number == approx(1.0 / r.purity));
  // scale invariance
  CHECK(schmidt_decompose(Eigen::MatrixXd(3.5 * a)).purity == approx(r.purity).epsilon(1e-12));
}

TEST_CASE("zero matrix is rejected") {
  CHECK_THROWS_AS(schmidt_decompose(Eigen::MatrixXd(Eigen::MatrixXd::Zero(8, 8))), DomainError);
}

TEST_CASE("purity of the 0.5 nm, 10 cm spectrum") {
  const auto cfg = hb800g();
  const auto pump = gaussian_pump(0.5);
  const auto js = build_joint_spectrum(cfg, pump, default_grid(cfg, pump));
  const auto r = schmidt_decompose(js);
  CHECK(r.purity == approx(0.86).epsilon(0.02 / 0.86));
  CHECK(r.purity == approx(trace_purity_oracle(js.amplitude.cwiseAbs())).epsilon(1e-9));
  // spectral phase can only spread the state further
  CHECK(schmidt_decompose(js, SchmidtInput::complex_amplitude).purity <= r.purity + 1e-12);
}

TEST_CASE("purity of the 5.4 nm spectrum") {
  const auto r = schmidt_decompose(broadband_spectrum(256));
  CHECK(r.purity == approx(0.22).epsilon(0.08 / 0.22));
}

TEST_CASE("filters") {
  const auto cfg = hb800g();
  const auto pump = gaussian_pump(0.5);
  const auto js = build_joint_spectrum(cfg, pump, default_grid(cfg, pump, 128, 128));
  const auto peaks = marginal_peak_wavelengths(js);

  SUBCASE("wide lossless filters change nothing") {
    const auto out = apply_filters(js, {peaks.signal_m, nm(50), 1.0}, {peaks.idler_m, nm(50), 1.0});
    CHECK(out.rate_retention == approx(1.0).epsilon(1e-12));
    CHECK(out.heralding_retention_signal == approx(1.0).epsilon(1e-12));
    CHECK(out.heralding_retention_idler == approx(1.0).epsilon(1e-12));
    CHECK(schmidt_decompose(out.spectrum).purity == approx(schmidt_decompose(js).purity).epsilon(1e-12));
  }
  SUBCASE("retentions match a direct sum over the passbands") {
    const FilterSpec fs{peaks.signal_m, nm(0.7), 0.9}, fi{peaks.idler_m, nm(1.4), 0.9};
    const auto out = apply_filters(js, fs, fi);
    const auto p = js.probability();
    double both = 0, s_only = 0, i_only = 0, total = p.sum();
    for (int j = 0; j < js.grid.n_signal; ++j) {
      const bool sp = std::abs(wavelength_from_omega(js.grid.signal_omega(j)) - peaks.signal_m) <= nm(0.35);
      for (int k = 0; k < js.grid.n_idler; ++k) {
        const bool ip = std::abs(wavelength_from_omega(js.grid.idler_omega(k)) - peaks.idler_m) <= nm(0.7);
        if (sp) s_only += 0.9 * p(j, k);
        if (ip) i_only += 0.9 * p(j, k);
        if (sp && ip) both += 0.81 * p(j, k);
      }
    }
    CHECK(out.rate_retention == approx(both / total).epsilon(1e-9));
    CHECK(out.heralding_retention_signal == approx(both / i_only).epsilon(1e-9));
    CHECK(out.heralding_retention_idler == approx(both / s_only).epsilon(1e-9));
    CHECK(schmidt_decompose(out.spectrum).purity >= 0.97);
    CHECK(out.spectrum.probability().sum() * js.grid.cell_area() == approx(1.0).epsilon(1e-9));
  }
  SUBCASE("band far from the spectrum") {
    CHECK_THROWS_AS(apply_filters(js, {peaks.signal_m + nm(50), nm(1), 0.9}, {peaks.idler_m, nm(1), 0.9}),
                    DomainError);
  }
  SUBCASE("invalid filter") {
    CHECK_THROWS(apply_filters(js, {peaks.signal_m, nm(1), 1.5}, {peaks.idler_m, nm(1), 0.9}));
  }
}

TEST_CASE("fidelity") {
  const auto js = broadband_spectrum(64);
  const auto p = probability_grid(js);
  CHECK(fidelity(p, p) == approx(1.0).epsilon(1e-9));

  SUBCASE("disjoint supports") {
    ProbabilityGrid a = p, b = p;
    a.density.setZero();
    b.density.setZero();
    a.density(0, 0) = 1.0 / p.grid.cell_area();
    b.density(5, 5) = 1.0 / p.grid.cell_area();
    CHECK(fidelity(a, b) == 0.0);
  }
  SUBCASE("mismatched grids") {
    ProbabilityGrid b = p;
    b.grid.signal_max *= 1.0001;
    CHECK_THROWS(fidelity(p, b));
  }
  SUBCASE("unnormalized input") {
    ProbabilityGrid b = p;
    b.density *= 1.001;
    CHECK_THROWS(fidelity(p, b));
  }
  SUBCASE("blur oracle") {
    const auto blurred = resample_to_measurement_grid(js, js.grid, nm(0.5), nm(0.5));
    CHECK(fidelity(p, blurred) > 0.9);
    CHECK(fidelity(p, blurred) < 1.0);
  }
}

TEST_CASE("instrument blur") {
  const auto js = broadband_spectrum(96);
  const auto p = probability_grid(js);

  SUBCASE("zero width on the same grid is the identity") {
    const auto out = resample_to_measurement_grid(js, js.grid, 0.0, 0.0);
    CHECK((out.density - p.density).cwiseAbs().maxCoeff() < 1e-9 * p.density.maxCoeff());
  }
  SUBCASE("0.5 nm resolution raises the apparent purity") {
    const auto out = resample_to_measurement_grid(js, js.grid, nm(0.5), nm(0.5));
    CHECK(purity_of_density(out) > purity_of_density(p));
  }
  SUBCASE("very wide blur tends to a separable state") {
    const auto out = gaussian_blur(p, 50 * (p.grid.signal_max - p.grid.signal_min),
                                   50 * (p.grid.idler_max - p.grid.idler_min));
    CHECK(purity_of_density(out) > 0.99);
  }
  SUBCASE("target grid outside the source") {
    auto target = js.grid;
    target.signal_max *= 1.01;
    CHECK_THROWS_AS(resample_to_measurement_grid(js, target, nm(0.5), nm(0.5)), DomainError);
  }
  SUBCASE("blur preserves normalization") {
    const auto out = gaussian_blur(p, 3 * p.grid.signal_step(), 2 * p.grid.idler_step());
    CHECK(out.density.sum() * out.grid.cell_area() == approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("rect pump penalty") {
  const auto base = gaussian_pump(0.5);
  const auto near = rect_vs_gaussian_purity_penalty(hb800g(), base, 128);
  CHECK(near.rect_purity < near.gaussian_purity);
  CHECK(near.relative_penalty == approx(1.0 - near.rect_purity / near.gaussian_purity));
  // in a long fiber the phase matching dominates and the pump shape matters less
  const auto longf = rect_vs_gaussian_purity_penalty(hb800g(2.0), base, 128);
  CHECK(longf.relative_penalty < 0.5 * near.relative_penalty);
}
