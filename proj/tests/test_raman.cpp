#include <doctest.h>

#include "fixtures.hpp"

#include <cmath>
#include <random>

#include "sfwm/errors.hpp"
#include "sfwm/raman.hpp"
#include "sfwm/units.hpp"

using namespace sfwm;
using sfwm::test::approx;

TEST_CASE("Stokes and anti-Stokes lines") {
  const double wp = omega_from_wavelength(nm(704.0));
  const auto zero = stokes_antistokes(nm(704.0), 0.0);
  CHECK(zero.stokes_omega == wp);
  CHECK(zero.antistokes_omega == wp);

  const auto lines = stokes_antistokes(nm(704.0), kTwoPi * kSilicaRamanShiftHz);
  const double hand = kSpeedOfLight / (kSpeedOfLight / nm(704.0) - 13.2e12);
  CHECK(lines.stokes_wavelength_m == approx(hand).epsilon(1e-12));
  CHECK(to_nm(lines.stokes_wavelength_m) == approx(727.0).epsilon(1.0 / 727.0));
  CHECK(lines.antistokes_wavelength_m < nm(704.0));
  CHECK_THROWS_AS(stokes_antistokes(nm(704.0), wp), DomainError);
}

TEST_CASE("count predictions scale as the spontaneous regime") {
  const RamanScalingModel m{0.3, 2.0, 1.5};
  const auto a = predict_counts(m, 0.01, 0.1);
  const auto b = predict_counts(m, 0.02, 0.1);
  CHECK(b.raman == approx(2 * a.raman));
  CHECK(b.idler == approx(4 * a.idler));
  CHECK(b.signal == approx(4 * a.signal));
  CHECK(b.snr == approx(2 * a.snr));
  const auto c = predict_counts(m, 0.01, 0.2);
  CHECK(c.snr == approx(a.snr));
  CHECK(predict_counts({1.0, 1.0, 1.0}, 1.0, 1.0).snr == approx(1.0));
}

TEST_CASE("zero Raman coefficient flags an infinite SNR") {
  const auto p = predict_counts({0.0, 1.0, 1.0}, 0.01, 0.1);
  CHECK(p.snr_infinite);
  CHECK(std::isinf(p.snr));
}

TEST_CASE("power-law fits recover synthetic exponents") {
  std::mt19937_64 rng(20100401);
  std::normal_distribution<double> noise(0.0, 0.01);
  PowerSweepData data;
  for (int i = 0; i < 8; ++i) {
    const double p = 2.0 + 2.0 * i;
    data.push_back({p, 3.0 * p * p * (1 + noise(rng)), 3.0 * p * p * (1 + noise(rng)), 5.0 * p * (1 + noise(rng))});
  }
  const auto fit = fit_power_sweep(data);
  CHECK(fit.signal.exponent == approx(2.0).epsilon(0.01));
  CHECK(fit.idler.exponent == approx(2.0).epsilon(0.01));
  CHECK(fit.raman.exponent == approx(1.0).epsilon(0.02));
  CHECK(fit.signal.fixed_exponent == 2.0);
  CHECK(fit.raman.fixed_exponent == 1.0);
  CHECK(fit.signal.fixed_prefactor == approx(3.0).epsilon(0.01));
  CHECK(fit.raman.fixed_prefactor == approx(5.0).epsilon(0.01));
  CHECK(fit.signal.exponent_stderr > 0.0);
  CHECK(fit.signal.exponent_stderr < 0.02);
}

TEST_CASE("exact power laws fit exactly") {
  std::vector<double> p{1, 2, 4, 8}, n;
  for (double x : p) n.push_back(0.7 * std::pow(x, 1.5));
  const auto f = fit_power_law(p, n, 2.0);
  CHECK(f.exponent == approx(1.5).epsilon(1e-12));
  CHECK(f.prefactor == approx(0.7).epsilon(1e-12));
  CHECK(f.residual_rms < 1e-12);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_power_law({1, 2}, {1, 4}, 2.0), DomainError);
  CHECK_THROWS_AS(fit_power_law({1, 1, 1, 1}, {1, 2, 3, 4}, 2.0), DomainError);
  try {
    fit_power_law({1, 2, 3}, {1, -4, 9}, 2.0);
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}
