// Series engine: momentum weight G, displacements f and F, the corrected
// potential, and the shifted well.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"
#include "pdm/transform.hpp"

using namespace pdm;

namespace {

// Independent oracle for the weight series with a linear generator
// g(x) = c x, built on plain dense polynomial arrays (coefficient of x^j at
// index j) -- no jets, no ScalarField machinery.
double linear_g_weight_oracle(double c, double x, int terms) {
  using Poly = std::vector<double>;
  auto deriv = [](const Poly& p) {
    Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = p[j] * j;
    return d;
  };
  auto mul_cx = [](const Poly& p, double c_) {  // multiply by c*x
    Poly q(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) q[j + 1] = c_ * p[j];
    return q;
  };
  auto eval = [](const Poly& p, double t) {
    double acc = 0.0;
    for (std::size_t j = p.size(); j-- > 0;) acc = acc * t + p[j];
    return acc;
  };
  Poly gk = {1.0};  // G_0 = 1
  double sum = 0.0, factorial = 1.0, sign = 1.0;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) {
      factorial *= k;
      sign = -sign;
    }
    sum += sign * eval(gk, x) / factorial;
    // G_{k+1} = g G_k' - g' G_k  with g = c x, g' = c.
    Poly a = mul_cx(deriv(gk), c);
    Poly b = gk;
    for (auto& v : b) v *= c;
    Poly next(std::max(a.size(), b.size()), 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) next[j] += a[j];
    for (std::size_t j = 0; j < b.size(); ++j) next[j] -= b[j];
    gk = next;
  }
  return sum;
}

}  // namespace

TEST_CASE("weight series for a linear generator sums to e^{c}") {
  // Oracle first: the independent polynomial recursion gives the same value
  // as the analytic limit e^{c} (each G_k is the constant (-c)^k, so the
  // alternating sum telescopes to sum c^k/k!).
  for (double c : {0.2, -0.35, 0.5 * std::log(2.0)}) {
    const double oracle = linear_g_weight_oracle(c, 0.7, 30);
    CHECK(oracle == doctest::Approx(std::exp(c)).epsilon(1e-12));

    const ScalarField G = series_G(linear_generator(c), 30, 1e-12);
    // The summed weight is position-independent for linear generators.
    for (double x : {-2.0, 0.4, 1.3}) {
      CHECK(G(x) == doctest::Approx(std::exp(c)).epsilon(1e-12));
      CHECK(G(x) == doctest::Approx(linear_g_weight_oracle(c, x, 30))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("weight series division guard at generator zeros") {
  // The recursion is written division-free, but the object it represents is
  // g^2 (G_k/g)': where g vanishes the construction as stated is undefined,
  // and evaluation must say so rather than silently continue.
  const ScalarField G = series_G(linear_generator(0.4), 16, 1e-12);
  CHECK_THROWS_AS((void)G(0.0), DivisionByGenerator);
}

TEST_CASE("constant generator: G = 1, f = c, F = -c after one term") {
  const ScalarField g = ScalarField::constant(0.8);
  TransformSeries ts(g, 16, 1e-14);
  for (double x : {-1.0, 0.0, 2.5}) {
    CHECK(ts.G()(x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ts.f()(x) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(ts.F()(x) == doctest::Approx(-0.8).epsilon(1e-15));
  }
  const SeriesDiagnostics dg = ts.diagnose_G(0.3);
  CHECK(dg.terminated);
  const SeriesDiagnostics df = ts.diagnose_f(0.3);
  CHECK(df.terminated);
}

TEST_CASE("exponential generator: weight series terminates at two terms") {
  const ScalarField g = generator_for_mass(1.0, 0.5);
  TransformSeries ts(g, 24, 1e-12);
  const SeriesDiagnostics d = ts.diagnose_G(-1.0);
  CHECK(d.terminated);
  CHECK(d.converged_at >= 0);
  CHECK(d.converged_at <= 3);
  // And sums to the closed form 1 + alpha beta e^{beta x} everywhere.
  const ScalarField Gc = G_closed(1.0, 0.5);
  for (double x = -6.0; x <= 4.0; x += 0.5) {
    CHECK(ts.G()(x) == doctest::Approx(Gc(x)).epsilon(1e-14));
  }
}

TEST_CASE("displacement series against closed forms and inverse pairing") {
  const double a = 1.0, b = 0.5;
  const ScalarField g = generator_for_mass(a, b);
  const ScalarField fs = series_f(g, 128, 1e-12);
  const ScalarField Fs = series_F(g, 128, 1e-12);
  const ScalarField fc = f_closed(a, b);
  const ScalarField Fc = F_closed(a, b);
  for (double x = -6.0; x <= 0.8; x += 0.2) {
    CHECK(fs(x) == doctest::Approx(fc(x)).epsilon(1e-10));
    CHECK(Fs(x) == doctest::Approx(Fc(x)).epsilon(1e-10));
  }
}

TEST_CASE("displacement series diverges beyond the admissible edge") {
  const ScalarField g = generator_for_mass(1.0, 0.5);
  const double xs = 2.0 * std::log(2.0);  // x_star for alpha=1, beta=1/2
  const ScalarField fs = series_f(g, 64, 1e-12);
  CHECK_THROWS_AS((void)fs(xs + 0.5), DomainError);
  TransformSeries ts(g, 64, 1e-12);
  CHECK(ts.diagnose_f(xs + 0.5).diverged);
  CHECK_FALSE(ts.diagnose_f(-1.0).diverged);
}

TEST_CASE("linear generator reproduces the coordinate scaling maps") {
  const double m0 = 2.0;
  const double c = 0.5 * std::log(m0);
  TransformSeries ts(linear_generator(c), 48, 1e-14);
  for (double x : {-1.5, -0.4, 0.3, 1.1, 2.0}) {
    CHECK(x + ts.f()(x) == doctest::Approx(std::sqrt(m0) * x).epsilon(1e-12));
    CHECK(x + ts.F()(x) == doctest::Approx(x / std::sqrt(m0)).epsilon(1e-12));
  }
}

TEST_CASE("quantum correction closed form for the exponential weight") {
  // For G = 1 + q, q = alpha beta e^{beta x}:
  //   (1/8)(G^2)'' - (1/8)(G')^2 = (beta^2/4) q + (3/8) beta^2 q^2.
  const double a = 1.0, b = 1.0;
  const ScalarField G = G_closed(a, b);
  const ScalarField zero;  // V = 0 isolates the correction term
  const ScalarField corr = v_tilde(zero, G, CorrectionConvention::kStandard);
  for (double x : {-2.0, -0.5, 0.0, 0.7}) {
    const double q = a * b * std::exp(b * x);
    CHECK(corr(x) ==
          doctest::Approx(0.25 * b * b * q + 0.375 * b * b * q * q)
              .epsilon(1e-12));
  }
  // Spot value: alpha = beta = 1 at x = 0 gives 1/4 + 3/8 = 0.625.
  CHECK(corr(0.0) == doctest::Approx(0.625).epsilon(1e-13));
}

TEST_CASE("conventions coincide exactly when the weight is constant") {
  const ScalarField G = ScalarField::constant(1.0 / std::sqrt(2.0));
  const ScalarField v = quadratic_field(0.5);
  const ScalarField standard = v_tilde(v, G, CorrectionConvention::kStandard);
  const ScalarField alternate =
      v_tilde(v, G, CorrectionConvention::kAlternate);
  for (double x : {-1.0, 0.0, 1.7}) {
    CHECK(standard(x) == doctest::Approx(v(x)).epsilon(1e-15));
    CHECK(alternate(x) == doctest::Approx(v(x)).epsilon(1e-15));
  }
}

TEST_CASE("transformed potential lands on the closed-form well") {
  // Valid-regime configuration: every node of the comparison window is
  // admissible and gamma is defined.
  const ExampleConfig cfg = deep_well_config();
  const ScalarField v = potential_family(cfg);
  const ScalarField g = generator_for_mass(cfg.alpha, cfg.beta);
  const TransformedPotential tp =
      transformed_potential(v, g, 128, 1e-10, CorrectionConvention::kStandard);
  const ScalarField target = morse_potential(morse_from_config(cfg));
  const double xs = cfg.x_star();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = -6.0 + (xs - 0.5 + 6.0) * i / 49.0;
    worst = std::max(worst, std::abs(tp.W(x) - target(x)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("mass-consistency defect") {
  const GridSpec grid(-6.0, 0.8, 50);
  SUBCASE("matched exponential pair is consistent") {
    const double defect = verify_mass_consistency(
        mass_family(1.0, 0.5), generator_for_mass(1.0, 0.5), grid, 24, 1e-12);
    CHECK(defect <= 1e-12);
  }
  SUBCASE("matched constant pair is consistent") {
    // n = 20 keeps x = 0 (the linear generator's zero, where the weight
    // series is undefined as stated) off the node set.
    const double defect = verify_mass_consistency(
        ScalarField::constant(2.0), mass_eliminating_generator(2.0),
        GridSpec(-3.0, 3.0, 20), 48, 1e-12);
    CHECK(defect <= 1e-10);
  }
  SUBCASE("mismatched pair is loudly inconsistent") {
    const double defect = verify_mass_consistency(
        mass_family(1.0, 0.5), generator_for_mass(1.35, 0.5), grid, 24, 1e-12);
    CHECK(defect > 1e-3);
  }
}

TEST_CASE("require_admissible names the failing prefix") {
  const ScalarField fs = series_f(generator_for_mass(1.0, 0.5), 64, 1e-12);
  CHECK_NOTHROW(require_admissible(fs, GridSpec(-6.0, 0.8, 20)));
  CHECK_THROWS_AS(require_admissible(fs, GridSpec(-6.0, 3.0, 20)),
                  DomainError);
}
