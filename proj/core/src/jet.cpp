#include "pdm/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pdm {

namespace {

int checked_order(int order, const char* context) {
  if (order < 0) {
    std::ostringstream os;
    os << context << ": negative truncation order " << order;
    throw UnsupportedOrder(os.str());
  }
  return order;
}

}  // namespace

Jet::Jet(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Jet Jet::constant(double value, int order) {
  std::vector<double> c(checked_order(order, "Jet::constant") + 1, 0.0);
  c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(double x0, int order) {
  std::vector<double> c(checked_order(order, "Jet::variable") + 1, 0.0);
  c[0] = x0;
  if (order >= 1) c[1] = 1.0;
  return Jet(std::move(c));
}

double Jet::coeff(int k) const {
  if (k < 0 || k > order()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Jet::derivative(int k) const {
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * coeff(k);
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Jet Jet::differentiated() const {
  if (order() < 1) {
    throw UnsupportedOrder(
        "Jet::differentiated: cannot differentiate an order-0 jet");
  }
  std::vector<double> c(coeffs_.size() - 1);
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) {
    c[k] = static_cast<double>(k + 1) * coeffs_[k + 1];
  }
  return Jet(std::move(c));
}

Jet Jet::truncated(int order) const {
  checked_order(order, "Jet::truncated");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  const std::size_t n = std::min(c.size(), coeffs_.size());
  std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n), c.begin());
  return Jet(std::move(c));
}

Jet Jet::operator-() const {
  std::vector<double> c(coeffs_);
  for (double& v : c) v = -v;
  return Jet(std::move(c));
}

Jet operator+(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
  return Jet(std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) - b.coeff(k);
  return Jet(std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const double ai = a.coeff(i);
    if (ai == 0.0) continue;
    for (int j = 0; j + i <= n; ++j) {
      c[static_cast<std::size_t>(i + j)] += ai * b.coeff(j);
    }
  }
  return Jet(std::move(c));
}

Jet operator*(double s, const Jet& a) {
  std::vector<double> c(a.coeffs());
  for (double& v : c) v *= s;
  return Jet(std::move(c));
}

Jet operator+(const Jet& a, double s) {
  std::vector<double> c(a.coeffs());
  c[0] += s;
  return Jet(std::move(c));
}

Jet& Jet::operator+=(const Jet& b) {
  *this = *this + b;
  return *this;
}

Jet Jet::exp(const Jet& u) {
  const int n = u.order();
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  w[0] = std::exp(u.value());
  // (k+1) w_{k+1} = sum_{j=0..k} (j+1) u_{j+1} w_{k-j}
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      acc += static_cast<double>(j + 1) * u.coeff(j + 1) *
             w[static_cast<std::size_t>(k - j)];
    }
    w[static_cast<std::size_t>(k + 1)] = acc / static_cast<double>(k + 1);
  }
  return Jet(std::move(w));
}

Jet Jet::log(const Jet& u) {
  if (!(u.value() > 0.0)) {
    std::ostringstream os;
    os << "Jet::log: argument value " << u.value() << " is not positive";
    throw DomainError(os.str());
  }
  const int n = u.order();
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  v[0] = std::log(u.value());
  // (k+1) u_0 v_{k+1} = (k+1) u_{k+1} - sum_{j=1..k} (k+1-j) u_j v_{k+1-j}
  for (int k = 0; k < n; ++k) {
    double acc = static_cast<double>(k + 1) * u.coeff(k + 1);
    for (int j = 1; j <= k; ++j) {
      acc -= static_cast<double>(k + 1 - j) * u.coeff(j) *
             v[static_cast<std::size_t>(k + 1 - j)];
    }
    v[static_cast<std::size_t>(k + 1)] =
        acc / (static_cast<double>(k + 1) * u.value());
  }
  return Jet(std::move(v));
}

Jet Jet::reciprocal(const Jet& u) {
  if (u.value() == 0.0) {
    throw DomainError("Jet::reciprocal: division by a jet with zero value");
  }
  const int n = u.order();
  std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
  r[0] = 1.0 / u.value();
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) {
      acc += u.coeff(j) * r[static_cast<std::size_t>(k - j)];
    }
    r[static_cast<std::size_t>(k)] = -acc / u.value();
  }
  return Jet(std::move(r));
}

Jet Jet::compose(const Jet& outer, const Jet& inner) {
  const int n = std::min(outer.order(), inner.order());
  // Shift the inner jet so its constant term vanishes, then Horner.
  Jet s = inner.truncated(n);
  s = s - Jet::constant(s.value(), n);
  Jet result = Jet::constant(outer.coeff(n), n);
  for (int k = n - 1; k >= 0; --k) {
    result = result * s + outer.coeff(k);
  }
  return result;
}

}  // namespace pdm
