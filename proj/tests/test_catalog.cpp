// The worked example family: mass, generator, potential, closed-form
// displacement/weight, Morse parameters, and the named configurations.

#include <cmath>

#include "doctest.h"
#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"

using namespace pdm;

TEST_CASE("mass family spot values and shape") {
  const ScalarField m = mass_family(1.0, 1.0);
  CHECK(m(0.0) == doctest::Approx(0.25).epsilon(1e-15));  // (1+1)^-2

  // Strictly decreasing and confined to (0, 1).
  const ScalarField m2 = mass_family(0.7, 0.4);
  double prev = 1.0;
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    const double v = m2(x);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
  }

  // Jet consistency: m'(x) analytic vs the field's derivative.
  // m = (1 + q)^-2 with q = alpha beta e^{beta x}: m' = -2 beta q (1+q)^-3.
  const double a = 0.7, b = 0.4, x = 0.9;
  const double q = a * b * std::exp(b * x);
  CHECK(m2.derivative(1)(x) ==
        doctest::Approx(-2.0 * b * q / std::pow(1.0 + q, 3)).epsilon(1e-13));

  CHECK_THROWS_AS((void)mass_family(-1.0, 1.0), ParamError);
  CHECK_THROWS_AS((void)mass_family(1.0, 0.0), ParamError);
}

TEST_CASE("generator matches the mass family") {
  const ScalarField g = generator_for_mass(0.7, 0.4);
  CHECK(g(0.3) == doctest::Approx(0.7 * std::exp(0.4 * 0.3)).epsilon(1e-15));
}

TEST_CASE("potential family spot value and coefficient relations") {
  const ExampleConfig cfg(1.0, 1.0, 1.0, 1.0, SignChoice::kPlus);
  CHECK(cfg.a2() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cfg.a3() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cfg.a4() == doctest::Approx(-0.375).epsilon(1e-15));
  const ScalarField v = potential_family(cfg);
  // 1 + 1 + 1/4 + 1/4 - 3/8 at x = 0.
  CHECK(v(0.0) == doctest::Approx(2.125).epsilon(1e-15));

  const ExampleConfig neg = cfg.with_sign(SignChoice::kMinus);
  CHECK(potential_family(neg)(0.0) == doctest::Approx(1.625).epsilon(1e-15));

  CHECK_THROWS_AS(ExampleConfig(1.0, 1.0, 0.0, 1.0, SignChoice::kPlus),
                  ParamError);
}

TEST_CASE("Morse parameters from a config") {
  SUBCASE("a solvable case") {
    // alpha = 1, beta = 3, a0 = 1, a1 = 1:
    //   D_e = (2 a0 - alpha beta a1)^2 / (4 a0) = (2 - 3)^2 / 4 = 1/4,
    //   gamma = (1/beta) ln(a1 / (alpha beta a1 - 2 a0)) = (1/3) ln 1 = 0.
    const ExampleConfig cfg(1.0, 3.0, 1.0, 1.0, SignChoice::kMinus);
    const MorseParams mp = morse_from_config(cfg);
    CHECK(mp.D_e == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mp.gamma == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mp.beta == doctest::Approx(3.0).epsilon(1e-15));
  }

  SUBCASE("gamma undefined when the log argument is not positive") {
    const ExampleConfig cfg(1.0, 1.0, 1.0, 1.0, SignChoice::kMinus);
    // alpha beta a1 - 2 a0 = 1 - 2 = -1 < 0.
    CHECK_THROWS_AS((void)morse_from_config(cfg), GammaUndefined);
  }

  SUBCASE("acceptance configuration values") {
    const ExampleConfig cfg = acceptance_config();
    const MorseParams mp = morse_from_config(cfg);
    CHECK(mp.D_e == doctest::Approx(81.0).epsilon(1e-12));
    // gamma = 2 ln(400/18); the equilibrium sits beyond the admissible edge
    // x_star = 2 ln 20 -- the structural obstruction reported by the
    // spectral checks.
    CHECK(mp.gamma == doctest::Approx(2.0 * std::log(400.0 / 18.0)).epsilon(1e-12));
    CHECK(cfg.x_star() == doctest::Approx(2.0 * std::log(20.0)).epsilon(1e-12));
    CHECK(mp.gamma > cfg.x_star());
  }

  SUBCASE("deep-well configuration is inside the admissible domain") {
    const ExampleConfig cfg = deep_well_config();
    const MorseParams mp = morse_from_config(cfg);
    CHECK(mp.gamma < cfg.x_star());
    CHECK(morse_level_count(mp) >= 4);
  }
}

TEST_CASE("Morse potential spot value") {
  // D_e (1 - e^{-beta (x - gamma)})^2 at beta = 1, gamma = 0, D_e = 0.25,
  // x = 3: 0.25 (1 - e^{-3})^2.
  const MorseParams mp(0.25, 1.0, 0.0);
  const ScalarField w = morse_potential(mp);
  const double expect = 0.25 * std::pow(1.0 - std::exp(-3.0), 2);
  CHECK(w(3.0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(std::abs(w(0.0)) < 1e-14);
}

TEST_CASE("closed-form displacement and momentum weight") {
  const double a = 1.0, b = 0.5;
  const ScalarField f = f_closed(a, b);
  const ScalarField G = G_closed(a, b);
  const ScalarField F = F_closed(a, b);

  // f(0) = -(1/b) ln(1 - a b) = -2 ln(1/2) = 2 ln 2; G(0) = 1 + a b = 3/2;
  // F(0) = -(1/b) ln(1 + a b) = -2 ln(3/2).
  CHECK(f(0.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(G(0.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(F(0.0) == doctest::Approx(-2.0 * std::log(1.5)).epsilon(1e-14));

  // The forward displacement is only defined below x_star.
  const double xs = -std::log(a * b) / b;
  CHECK_THROWS_AS((void)f(xs + 0.1), DomainError);

  // x + f(x) is strictly increasing (it is a coordinate change).
  double prev = -1e300;
  for (double x = -6.0; x < xs - 0.05; x += 0.1) {
    const double y = x + f(x);
    CHECK(y > prev);
    prev = y;
  }

  // Inverse-pair identity: (x + f) followed by (y + F) returns x.
  for (double x : {-3.0, -1.0, 0.0, 0.8}) {
    const double y = x + f(x);
    CHECK(y + F(y) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("textbook Morse levels") {
  // E_n = beta sqrt(2 D_e) (n + 1/2) - beta^2 (n + 1/2)^2 / 2.
  const MorseParams mp(81.0, 0.5, 10.0);
  CHECK(morse_level(mp, 0) ==
        doctest::Approx(0.5 * std::sqrt(162.0) * 0.5 - 0.125 * 0.25)
            .epsilon(1e-14));
  // Count: levels with n + 1/2 < sqrt(2 D_e) / beta = sqrt(162)/0.5.
  CHECK(morse_level_count(mp) == 25);
  // Monotone up to the dissociation shoulder.
  for (int n = 0; n + 1 < morse_level_count(mp); ++n) {
    CHECK(morse_level(mp, n) < morse_level(mp, n + 1));
  }
}

TEST_CASE("figure data protocol") {
  const FigureData fd = make_figure_data();
  REQUIRE(fd.x.size() == 501);
  REQUIRE(fd.betas.size() == 3);
  REQUIRE(fd.mass.size() == 3);
  REQUIRE(fd.potential.size() == 3);
  CHECK(fd.x.front() == doctest::Approx(-6.0));
  CHECK(fd.x.back() == doctest::Approx(4.0));
  CHECK(fd.x[300] == 0.0);  // exact node at the origin
  CHECK(fd.mass[1][300] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(fd.potential[1][300] == doctest::Approx(2.125).epsilon(1e-15));
}
