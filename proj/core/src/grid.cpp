#include "pdm/grid.hpp"

#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

GridSpec::GridSpec(double x_min_, double x_max_, int n_)
    : x_min(x_min_), x_max(x_max_), n(n_) {
  if (!(x_min < x_max)) {
    std::ostringstream os;
    os << "GridSpec: x_min (" << x_min << ") must be < x_max (" << x_max
       << ")";
    throw ParamError(os.str());
  }
  if (n < 3) {
    std::ostringstream os;
    os << "GridSpec: need at least 3 interior nodes, got " << n;
    throw ParamError(os.str());
  }
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = node(i);
  return xs;
}

std::vector<double> sample(const ScalarField& field, const GridSpec& grid) {
  std::vector<double> values(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    if (!field.domain().contains(x)) {
      std::ostringstream os;
      os << "sample: node " << i << " at x = " << x
         << " lies outside the domain " << field.domain().str()
         << " of field '" << field.label() << "'";
      throw DomainError(os.str());
    }
    values[static_cast<std::size_t>(i)] = field(x);
  }
  return values;
}

}  // namespace pdm
