// Sturm-bisection eigensolver, inverse-iteration eigenvectors, and the dense
// Jacobi cross-check oracle.

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pdm/catalog.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/errors.hpp"
#include "pdm/operators.hpp"

using namespace pdm;

TEST_CASE("diagonal operator returns its sorted diagonal") {
  TridiagonalOperator op{{3.0, -1.0, 2.0, 0.5}, {0.0, 0.0, 0.0},
                         GridSpec(0, 1, 4), "diag"};
  const std::vector<double> ev = lowest_eigenvalues(op, 4);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("two-by-two analytic cross-check") {
  // [[a, b], [b, d]]: eigenvalues (a+d)/2 -+ sqrt(((a-d)/2)^2 + b^2).
  TridiagonalOperator op{{1.0, 3.0}, {2.0}, GridSpec(0, 1, 3), "2x2"};
  const double mid = 2.0, rad = std::sqrt(1.0 + 4.0);
  // Bisection brackets to width 1e-12 * operator_scale, so the midpoint can
  // sit a few 1e-12 away from the exact root.
  const std::vector<double> ev = lowest_eigenvalues(op, 2);
  CHECK(std::abs(ev[0] - (mid - rad)) < 1e-11);
  CHECK(std::abs(ev[1] - (mid + rad)) < 1e-11);
}

TEST_CASE("sturm counts are monotone and consistent with the spectrum") {
  const GridSpec grid(-8.0, 8.0, 300);
  const TridiagonalOperator h =
      hamiltonian_constant(quadratic_field(0.5), grid, 1.0);
  const std::vector<double> ev = lowest_eigenvalues(h, 6);
  int prev = 0;
  for (double lambda = 0.0; lambda < 6.0; lambda += 0.5) {
    const int c = sturm_count(h, lambda);
    CHECK(c >= prev);
    prev = c;
  }
  // Between level i and level i+1 the count is exactly i+1.
  for (int i = 0; i + 1 < 6; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double between = 0.5 * (ev[s] + ev[s + 1]);
    CHECK(sturm_count(h, between) == i + 1);
  }
}

TEST_CASE("harmonic ladder to a tenth of a percent") {
  const GridSpec grid(-10.0, 10.0, 2000);
  const TridiagonalOperator h =
      hamiltonian_constant(quadratic_field(0.5), grid, 1.0);
  const std::vector<double> ev = lowest_eigenvalues(h, 5);
  for (int i = 0; i < 5; ++i) {
    const double exact = i + 0.5;
    CHECK(std::abs(ev[static_cast<std::size_t>(i)] - exact) / exact < 1e-4);
  }
}

TEST_CASE("eigenpairs satisfy the residual invariant") {
  const GridSpec grid(-8.0, 8.0, 500);
  const TridiagonalOperator h =
      hamiltonian_constant(quadratic_field(0.5), grid, 1.0);
  const std::vector<EigenPair> pairs = lowest_eigenpairs(h, 4);
  const double scale = operator_scale(h);
  for (const auto& p : pairs) {
    const std::vector<double> hv = h.apply(p.vector);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) {
      const double r = hv[i] - p.value * p.vector[i];
      num += r * r;
      den += p.vector[i] * p.vector[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-8 * scale);
    // h-weighted normalization.
    CHECK(std::sqrt(grid.h() * den) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("eigenvalue drift shrinks at second order under refinement") {
  auto level0 = [](int n) {
    const GridSpec grid(-9.0, 9.0, n);
    return lowest_eigenvalues(
        hamiltonian_constant(quadratic_field(0.5), grid, 1.0), 1)[0];
  };
  const double d1 = std::abs(level0(250) - level0(500));
  const double d2 = std::abs(level0(500) - level0(1000));
  const double ratio = d1 / d2;
  CHECK(ratio > 2.5);
  CHECK(ratio < 5.5);
}

TEST_CASE("dense Jacobi oracle on analytic matrices") {
  SUBCASE("diagonal") {
    std::vector<double> a = {2.0, 0.0, 0.0, -1.0};
    const std::vector<double> ev = dense_symmetric_eigenvalues(a, 2);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("constant row-sum matrix") {
    // [[2,1],[1,2]]: eigenvalues 1 and 3.
    std::vector<double> a = {2.0, 1.0, 1.0, 2.0};
    const std::vector<double> ev = dense_symmetric_eigenvalues(a, 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("3x3 with known spectrum") {
    // Discrete Laplacian [[2,-1,0],[-1,2,-1],[0,-1,2]]:
    // eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2).
    std::vector<double> a = {2, -1, 0, -1, 2, -1, 0, -1, 2};
    const std::vector<double> ev = dense_symmetric_eigenvalues(a, 3);
    CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("bisection agrees with the dense oracle on random matrices") {
  std::mt19937_64 rng(20260814ull);
  std::uniform_real_distribution<double> diag_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> off_dist(-1.5, 1.5);
  const int n = 8;
  for (int trial = 0; trial < 100; ++trial) {
    TridiagonalOperator op{std::vector<double>(n), std::vector<double>(n - 1),
                           GridSpec(0.0, 1.0, n), "random"};
    for (auto& d : op.diag) d = diag_dist(rng);
    for (auto& o : op.offdiag) o = off_dist(rng);
    std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      dense[static_cast<std::size_t>(i) * n + i] =
          op.diag[static_cast<std::size_t>(i)];
      if (i + 1 < n) {
        dense[static_cast<std::size_t>(i) * n + i + 1] =
            op.offdiag[static_cast<std::size_t>(i)];
        dense[static_cast<std::size_t>(i + 1) * n + i] =
            op.offdiag[static_cast<std::size_t>(i)];
      }
    }
    const std::vector<double> mine = lowest_eigenvalues(op, n);
    const std::vector<double> oracle = dense_symmetric_eigenvalues(dense, n);
    for (int i = 0; i < n; ++i) {
      const auto s = static_cast<std::size_t>(i);
      CHECK(std::abs(mine[s] - oracle[s]) <= 1e-10);
    }
  }
}

TEST_CASE("k must be within range") {
  TridiagonalOperator op{{1.0, 2.0, 3.0}, {0.1, 0.1}, GridSpec(0, 1, 3), "t"};
  CHECK_THROWS_AS((void)lowest_eigenvalues(op, 0), ParamError);
  CHECK_THROWS_AS((void)lowest_eigenvalues(op, 4), ParamError);
}
