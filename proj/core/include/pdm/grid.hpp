#pragma once

#include <vector>

#include "pdm/scalar_field.hpp"

namespace pdm {

// Uniform 1D grid of n interior nodes with Dirichlet walls at x_min and
// x_max.  Node i (0-based) sits at x_min + (i+1) h with h spanning the
// interval in n+1 steps; the wall points themselves carry no unknowns.
struct GridSpec {
  double x_min;
  double x_max;
  int n;

  GridSpec(double x_min_, double x_max_, int n_);

  double h() const { return (x_max - x_min) / (n + 1); }
  double node(int i) const { return x_min + (i + 1) * h(); }
  std::vector<double> nodes() const;
};

// Field values at every interior node.  Throws DomainError naming the
// offending node if any node falls outside the field's domain.
std::vector<double> sample(const ScalarField& field, const GridSpec& grid);

}  // namespace pdm
