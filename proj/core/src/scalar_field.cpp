#include "pdm/scalar_field.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace pdm {

struct ScalarField::Impl {
  JetFn fn;
  Interval dom;
  int max_order = 0;
  std::string label;
};

namespace {

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

ScalarField::ScalarField(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

ScalarField::ScalarField() : ScalarField(constant(0.0).impl_) {}

ScalarField ScalarField::from_jet_function(JetFn fn, Interval domain,
                                           int max_jet_order,
                                           std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(fn);
  impl->dom = domain;
  impl->max_order = max_jet_order;
  impl->label = std::move(label);
  return ScalarField(std::move(impl));
}

ScalarField ScalarField::constant(double value) {
  return from_jet_function(
      [value](double, int order) { return Jet::constant(value, order); },
      Interval::whole_line(), kUnlimitedOrder, "const");
}

ScalarField ScalarField::coordinate() {
  return from_jet_function(
      [](double x0, int order) { return Jet::variable(x0, order); },
      Interval::whole_line(), kUnlimitedOrder, "x");
}

ScalarField ScalarField::exponential(double amplitude, double rate) {
  std::ostringstream os;
  os << amplitude << "*exp(" << rate << "*x)";
  return from_jet_function(
      [amplitude, rate](double x0, int order) {
        std::vector<double> c(static_cast<std::size_t>(order) + 1);
        double term = amplitude * std::exp(rate * x0);
        for (int k = 0; k <= order; ++k) {
          c[static_cast<std::size_t>(k)] = term;
          term *= rate / static_cast<double>(k + 1);
        }
        return Jet(std::move(c));
      },
      Interval::whole_line(), kUnlimitedOrder, os.str());
}

ScalarField ScalarField::from_function(std::function<double(double)> f,
                                       Interval domain, double fd_step_scale,
                                       std::string label) {
  auto fn = [f = std::move(f), domain, fd_step_scale,
             lbl = label](double x0, int order) {
    if (order == 0) return Jet(std::vector<double>{f(x0)});
    const double h = fd_step_scale * std::max(1.0, std::abs(x0));
    if (!domain.contains(x0 - h) || !domain.contains(x0 + h)) {
      std::ostringstream os;
      os << "finite-difference stencil for field '" << lbl << "' at x = " << x0
         << " steps outside domain " << domain.str();
      throw DomainError(os.str());
    }
    const double fm = f(x0 - h), f0 = f(x0), fp = f(x0 + h);
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = f0;
    c[1] = (fp - fm) / (2.0 * h);
    if (order >= 2) c[2] = (fp - 2.0 * f0 + fm) / (2.0 * h * h);
    return Jet(std::move(c));
  };
  return from_jet_function(std::move(fn), domain, 2, std::move(label));
}

double ScalarField::operator()(double x) const {
  require_inside(impl_->dom, x, ("field '" + impl_->label + "'").c_str());
  return impl_->fn(x, 0).value();
}

Jet ScalarField::jet(double x, int order) const {
  require_inside(impl_->dom, x, ("field '" + impl_->label + "'").c_str());
  if (order < 0 || order > impl_->max_order) {
    std::ostringstream os;
    os << "field '" << impl_->label << "': jet order " << order
       << " outside supported range [0, " << impl_->max_order << "]";
    throw UnsupportedOrder(os.str());
  }
  return impl_->fn(x, order);
}

ScalarField ScalarField::derivative(int order) const {
  if (order != 1 && order != 2) {
    std::ostringstream os;
    os << "derivative order must be 1 or 2, got " << order;
    throw UnsupportedOrder(os.str());
  }
  if (impl_->max_order < order) {
    std::ostringstream os;
    os << "field '" << impl_->label << "' supports jets only through order "
       << impl_->max_order << "; cannot form derivative of order " << order;
    throw UnsupportedOrder(os.str());
  }
  auto parent = impl_;
  std::string lbl = (order == 1 ? "d/dx" : "d2/dx2") + paren(parent->label);
  return from_jet_function(
      [parent, order](double x0, int n) {
        Jet j = parent->fn(x0, n + order);
        for (int i = 0; i < order; ++i) j = j.differentiated();
        return j;
      },
      parent->dom, impl_->max_order - order, std::move(lbl));
}

int ScalarField::deriv_order_supported() const { return impl_->max_order; }
int ScalarField::max_jet_order() const { return impl_->max_order; }
const Interval& ScalarField::domain() const { return impl_->dom; }
const std::string& ScalarField::label() const { return impl_->label; }

ScalarField ScalarField::with_domain(Interval domain) const {
  auto parent = impl_;
  return from_jet_function(
      [parent](double x0, int n) { return parent->fn(x0, n); }, domain,
      parent->max_order, parent->label);
}

ScalarField ScalarField::with_label(std::string label) const {
  auto parent = impl_;
  return from_jet_function(
      [parent](double x0, int n) { return parent->fn(x0, n); }, parent->dom,
      parent->max_order, std::move(label));
}

namespace {

ScalarField combine(const ScalarField& a, const ScalarField& b, char op,
                    Jet (*apply)(const Jet&, const Jet&)) {
  struct Binder {
    ScalarField a, b;
    Jet (*apply)(const Jet&, const Jet&);
  };
  auto binder = std::make_shared<Binder>(Binder{a, b, apply});
  Interval dom = a.domain().intersect(b.domain());
  if (dom.empty()) {
    throw DomainError(std::string("combining fields '") + a.label() + "' " +
                      op + " '" + b.label() + "': empty domain intersection");
  }
  int max_order = std::min(a.max_jet_order(), b.max_jet_order());
  std::string lbl = paren(a.label() + " " + op + " " + b.label());
  return ScalarField::from_jet_function(
      [binder](double x0, int n) {
        return binder->apply(binder->a.jet(x0, n), binder->b.jet(x0, n));
      },
      dom, max_order, std::move(lbl));
}

Jet jet_add(const Jet& x, const Jet& y) { return x + y; }
Jet jet_sub(const Jet& x, const Jet& y) { return x - y; }
Jet jet_mul(const Jet& x, const Jet& y) { return x * y; }

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, '+', &jet_add);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, '-', &jet_sub);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, '*', &jet_mul);
}

ScalarField operator*(double s, const ScalarField& a) {
  auto parent = a;
  std::ostringstream os;
  os << s << "*" << paren(a.label());
  return ScalarField::from_jet_function(
      [parent, s](double x0, int n) { return s * parent.jet(x0, n); },
      a.domain(), a.max_jet_order(), os.str());
}

ScalarField operator+(const ScalarField& a, double s) {
  auto parent = a;
  std::ostringstream os;
  os << paren(a.label()) << "+" << s;
  return ScalarField::from_jet_function(
      [parent, s](double x0, int n) { return parent.jet(x0, n) + s; },
      a.domain(), a.max_jet_order(), os.str());
}

ScalarField operator-(double s, const ScalarField& a) {
  return (-a) + s;
}

ScalarField ScalarField::operator-() const { return -1.0 * (*this); }

ScalarField ScalarField::compose_shift(const ScalarField& outer,
                                       const ScalarField& shift) {
  ScalarField o = outer, s = shift;
  int max_order = std::min(outer.max_jet_order(), shift.max_jet_order());
  std::string lbl = outer.label() + "(x + " + shift.label() + ")";
  return from_jet_function(
      [o, s](double x0, int n) {
        Jet inner = Jet::variable(x0, n) + s.jet(x0, n);
        // Domain check for the shifted abscissa happens inside o.jet().
        Jet out = o.jet(inner.value(), n);
        return Jet::compose(out, inner);
      },
      shift.domain(), max_order, std::move(lbl));
}

}  // namespace pdm
