#pragma once

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

// Open interval (lo, hi), possibly unbounded on either side.  Used as the
// validity domain of scalar fields: evaluation is legal strictly inside.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval whole_line() { return Interval{}; }

  static Interval below(double hi) {
    return Interval{-std::numeric_limits<double>::infinity(), hi};
  }

  static Interval above(double lo) {
    return Interval{lo, std::numeric_limits<double>::infinity()};
  }

  bool contains(double x) const { return lo < x && x < hi; }

  // Closed containment of [a, b] in the open interval.
  bool contains_closed_range(double a, double b) const {
    return lo < a && b < hi;
  }

  Interval intersect(const Interval& other) const {
    return Interval{std::max(lo, other.lo), std::min(hi, other.hi)};
  }

  bool empty() const { return !(lo < hi); }

  std::string str() const {
    std::ostringstream os;
    os << "(" << lo << ", " << hi << ")";
    return os.str();
  }
};

inline void require_inside(const Interval& dom, double x,
                           const char* context) {
  if (!dom.contains(x)) {
    std::ostringstream os;
    os << context << ": x = " << x << " is outside the validity domain "
       << dom.str();
    throw DomainError(os.str());
  }
}

}  // namespace pdm
