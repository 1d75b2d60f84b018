// Jets, scalar fields, and grid geometry.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "pdm/errors.hpp"
#include "pdm/grid.hpp"
#include "pdm/interval.hpp"
#include "pdm/jet.hpp"
#include "pdm/scalar_field.hpp"

using pdm::GridSpec;
using pdm::Interval;
using pdm::Jet;
using pdm::ScalarField;

TEST_CASE("jet arithmetic reproduces derivatives of elementary functions") {
  const double x0 = 0.7;
  const Jet x = Jet::variable(x0, 6);

  SUBCASE("polynomial") {
    // p(x) = 3x^3 - 2x + 5; p'(x) = 9x^2 - 2; p''(x) = 18x.
    const Jet p = 3.0 * (x * x * x) - 2.0 * x + 5.0;
    CHECK(p.value() == doctest::Approx(3 * x0 * x0 * x0 - 2 * x0 + 5).epsilon(1e-15));
    CHECK(p.derivative(1) == doctest::Approx(9 * x0 * x0 - 2).epsilon(1e-15));
    CHECK(p.derivative(2) == doctest::Approx(18 * x0).epsilon(1e-15));
    CHECK(p.derivative(4) == doctest::Approx(0.0));
  }

  SUBCASE("exp, log, reciprocal chain") {
    const Jet e = Jet::exp(x);
    CHECK(e.derivative(5) == doctest::Approx(std::exp(x0)).epsilon(1e-13));
    const Jet l = Jet::log(1.0 + e);
    // d/dx log(1 + e^x) = e^x / (1 + e^x)
    CHECK(l.derivative(1) ==
          doctest::Approx(std::exp(x0) / (1 + std::exp(x0))).epsilon(1e-13));
    const Jet r = Jet::reciprocal(1.0 + x * x);
    // d/dx of 1/(1+x^2) = -2x/(1+x^2)^2
    const double denom = (1 + x0 * x0) * (1 + x0 * x0);
    CHECK(r.derivative(1) == doctest::Approx(-2 * x0 / denom).epsilon(1e-13));
  }

  SUBCASE("compose") {
    // outer(u) = exp(u) expanded at u0 = x0^2; inner(x) = x^2 at x0.
    const Jet inner = x * x;
    const Jet outer = Jet::exp(Jet::variable(inner.value(), 6));
    const Jet c = Jet::compose(outer, inner);
    // d/dx exp(x^2) = 2x exp(x^2)
    CHECK(c.derivative(1) ==
          doctest::Approx(2 * x0 * std::exp(x0 * x0)).epsilon(1e-12));
    CHECK(c.derivative(2) ==
          doctest::Approx((2 + 4 * x0 * x0) * std::exp(x0 * x0)).epsilon(1e-11));
  }

  SUBCASE("domain guards") {
    CHECK_THROWS_AS((void)Jet::log(Jet::constant(-1.0, 3)), pdm::DomainError);
    CHECK_THROWS_AS((void)Jet::reciprocal(Jet::constant(0.0, 3)),
                    pdm::DomainError);
  }
}

TEST_CASE("scalar fields: factories, arithmetic, and jets agree") {
  const ScalarField e = ScalarField::exponential(2.0, -0.5);
  CHECK(e(1.0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(e.derivative(1)(1.0) ==
        doctest::Approx(-1.0 * std::exp(-0.5)).epsilon(1e-15));

  const ScalarField combo =
      e * ScalarField::coordinate() + ScalarField::constant(3.0);
  const Jet j = combo.jet(0.25, 3);
  const double v = 2.0 * std::exp(-0.125) * 0.25 + 3.0;
  CHECK(j.value() == doctest::Approx(v).epsilon(1e-15));
  // d/dx [2 e^{-x/2} x] = 2 e^{-x/2} (1 - x/2)
  CHECK(j.derivative(1) ==
        doctest::Approx(2.0 * std::exp(-0.125) * (1 - 0.125)).epsilon(1e-14));
}

TEST_CASE("from_function derivatives converge at second order") {
  // Plain-function fields differentiate by centered differences; halving a
  // known analytic perturbation shows the expected O(h^2) signature via
  // Richardson: compare against the analytic derivative of sin.
  const ScalarField s = ScalarField::from_function(
      [](double x) { return std::sin(x); }, Interval::whole_line(), 1e-5,
      "sin");
  const double d1 = s.derivative(1)(0.3);
  CHECK(d1 == doctest::Approx(std::cos(0.3)).epsilon(1e-6));
  const double d2 = s.derivative(2)(0.3);
  CHECK(d2 == doctest::Approx(-std::sin(0.3)).epsilon(1e-5));
  CHECK_THROWS_AS((void)s.jet(0.3, 3), pdm::UnsupportedOrder);
}

TEST_CASE("field domains restrict evaluation") {
  const ScalarField e =
      ScalarField::exponential(1.0, 1.0).with_domain(Interval::below(2.0));
  CHECK_NOTHROW((void)e(1.9));
  CHECK_THROWS_AS((void)e(2.1), pdm::DomainError);

  // compose_shift consults the outer domain at the shifted point.
  const ScalarField shift = ScalarField::constant(1.5);
  const ScalarField composed = ScalarField::compose_shift(e, shift);
  CHECK(composed(0.0) == doctest::Approx(std::exp(1.5)).epsilon(1e-15));
  CHECK_THROWS_AS((void)composed(1.0), pdm::DomainError);  // 1 + 1.5 > 2
}

TEST_CASE("grid geometry") {
  const GridSpec grid(-1.0, 1.0, 3);
  CHECK(grid.h() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(grid.node(0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(grid.node(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(GridSpec(1.0, -1.0, 3), pdm::ParamError);
  CHECK_THROWS_AS(GridSpec(-1.0, 1.0, 0), pdm::ParamError);
}
