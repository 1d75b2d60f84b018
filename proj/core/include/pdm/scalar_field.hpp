#pragma once

#include <functional>
#include <memory>
#include <string>

#include "pdm/interval.hpp"
#include "pdm/jet.hpp"

namespace pdm {

// Immutable real-valued function of position with exact-or-numerical
// derivatives.  A field is an evaluation procedure producing truncated Taylor
// expansions (jets): analytic constructions propagate derivatives exactly to
// arbitrary order, while finite-difference-backed fields stop at order 2.
//
// All combinators return new values; nothing is mutated after construction,
// so fields are safe to share across threads.
class ScalarField {
 public:
  using JetFn = std::function<Jet(double x0, int order)>;

  // Order reported by constructions whose derivatives are exact at any depth.
  static constexpr int kUnlimitedOrder = 1 << 20;

  ScalarField();  // the zero field on the whole line

  static ScalarField constant(double value);
  static ScalarField coordinate();
  // amplitude * exp(rate * x)
  static ScalarField exponential(double amplitude, double rate);
  // Plain evaluation procedure; derivatives via centered finite differences
  // with step fd_step_scale * max(1, |x|).  Supports jets through order 2.
  static ScalarField from_function(std::function<double(double)> f,
                                   Interval domain,
                                   double fd_step_scale = 1e-5,
                                   std::string label = "from_function");
  // Fully custom jet procedure (used by the catalog for closed forms).
  static ScalarField from_jet_function(JetFn fn, Interval domain,
                                       int max_jet_order,
                                       std::string label = "from_jets");

  // Evaluate; throws DomainError outside the validity domain.
  double operator()(double x) const;

  // Taylor expansion about x through the requested order.  Throws
  // DomainError outside the domain and UnsupportedOrder beyond
  // max_jet_order().
  Jet jet(double x, int order) const;

  // Derivative field of order 1 or 2 (any other order: UnsupportedOrder).
  // Analytic inputs stay analytic; finite-difference inputs lose the
  // corresponding number of supported jet orders.
  ScalarField derivative(int order) const;

  int deriv_order_supported() const;
  int max_jet_order() const;
  const Interval& domain() const;
  const std::string& label() const;

  // Same field restricted (or re-annotated) to the given domain.
  ScalarField with_domain(Interval domain) const;
  ScalarField with_label(std::string label) const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(double s, const ScalarField& a);
  friend ScalarField operator*(const ScalarField& a, double s) {
    return s * a;
  }
  friend ScalarField operator+(const ScalarField& a, double s);
  friend ScalarField operator+(double s, const ScalarField& a) {
    return a + s;
  }
  friend ScalarField operator-(const ScalarField& a, double s) {
    return a + (-s);
  }
  friend ScalarField operator-(double s, const ScalarField& a);
  ScalarField operator-() const;

  // x |-> outer(x + shift(x)).  The composition point is evaluated lazily:
  // outer is consulted exactly at the shifted abscissa, with its own domain
  // check, so no resampling or interpolation error enters.
  static ScalarField compose_shift(const ScalarField& outer,
                                   const ScalarField& shift);

 private:
  struct Impl;
  explicit ScalarField(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace pdm
