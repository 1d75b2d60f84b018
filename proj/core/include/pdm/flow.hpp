#pragma once

#include "pdm/scalar_field.hpp"

namespace pdm {

// Direction of the unit-time characteristic flow of the generator:
//   kForward  integrates dx/ds = +g(x), reproducing the displacement f
//   kBackward integrates dx/ds = -g(x), reproducing the alternating
//             displacement F
enum class FlowDirection { kForward, kBackward };

struct FlowOptions {
  int base_steps = 256;    // fixed RK4 step count for the coarse pass
  bool richardson = true;  // add a halved-step pass and extrapolate
};

struct FlowResult {
  double x0 = 0.0;        // start point
  double x1 = 0.0;        // endpoint of the unit-time flow
  double jacobian = 1.0;  // d x1 / d x0, integrated variationally
  int steps_used = 0;     // step count of the finest pass
  double est_error = 0.0; // Richardson error estimate for x1 (0 if disabled)
};

// Integrates the flow with classical fixed-step RK4, together with the
// variational equation dJ/ds = +-g'(x) J.  With richardson enabled, a
// second pass at twice the steps sharpens both by one extrapolation and
// yields an error estimate.  Throws FlowEscape (carrying the escape time)
// if the trajectory leaves the generator's domain, exceeds 1e12 in
// magnitude, or becomes non-finite.
FlowResult flow_map(const ScalarField& g, double x0, FlowDirection dir,
                    FlowOptions opts = {});

// Displacement oracles: endpoint minus start of the unit-time flow.
double f_oracle(const ScalarField& g, double x);
double F_oracle(const ScalarField& g, double x);

}  // namespace pdm
