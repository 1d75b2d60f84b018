#pragma once

#include <vector>

#include "pdm/errors.hpp"

namespace pdm {

// Truncated Taylor expansion of a function about some base point:
//
//   jet.coeff(k) == f^(k)(x0) / k!
//
// so the represented polynomial is  sum_k coeff(k) * (x - x0)^k  through
// degree order().  All series arithmetic in the library (momentum-weight and
// displacement recursions, quantum-correction terms) runs on jets, which
// propagates derivatives exactly instead of chaining finite differences.
class Jet {
 public:
  Jet() : coeffs_(1, 0.0) {}
  explicit Jet(std::vector<double> coeffs);

  // f == c in a neighborhood: [c, 0, 0, ...].
  static Jet constant(double value, int order);
  // f == x expanded about x0: [x0, 1, 0, ...].
  static Jet variable(double x0, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double value() const { return coeffs_[0]; }
  double coeff(int k) const;
  // f^(k)(x0) = k! * coeff(k).  Only meaningful while k! is exact in double.
  double derivative(int k) const;

  const std::vector<double>& coeffs() const { return coeffs_; }

  // Largest |coeff| — used by the series engine for termination detection.
  double max_abs_coeff() const;

  // d/dx: one order lower.  Requires order() >= 1.
  Jet differentiated() const;

  // Truncate (or zero-extend) to the given order.
  Jet truncated(int order) const;

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);  // Cauchy product
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s) { return s * a; }
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return -(a - s); }

  Jet& operator+=(const Jet& b);

  // exp(f): value-and-recurrence composition; defined for any jet.
  static Jet exp(const Jet& u);
  // log(f): requires u.value() > 0, else DomainError.
  static Jet log(const Jet& u);
  // 1/f: requires u.value() != 0, else DomainError.
  static Jet reciprocal(const Jet& u);

  // outer(inner(t)) where inner.value() is the expansion point of outer;
  // i.e. composes outer with (inner - inner.value()).  Result order is
  // min(outer.order(), inner.order()).
  static Jet compose(const Jet& outer, const Jet& inner);

 private:
  std::vector<double> coeffs_;
};

}  // namespace pdm
