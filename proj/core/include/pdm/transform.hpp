#pragma once

#include <string>

#include "pdm/grid.hpp"
#include "pdm/scalar_field.hpp"

namespace pdm {

// Which closed form of the quantum correction enters the transformed
// potential.  Expanding the conjugated kinetic term leaves a choice between
// two printed variants; the verify suite discriminates them numerically.
enum class CorrectionConvention {
  // V + (1/8) (G^2)'' - (1/8) (G')^2
  kStandard,
  // V - (1/8) (G^2)'' + (1/2) (G')^2
  kAlternate,
};

std::string to_string(CorrectionConvention c);

// Convergence/termination bookkeeping for a series evaluation at one point.
struct SeriesDiagnostics {
  // Smallest term index at which |term| < tol*(1 + |partial sum|); -1 when
  // the tolerance was never met within K terms.
  int converged_at = -1;
  // The recursion produced an exactly-vanishing term, so the series is a
  // finite sum (e.g. constant or linear generators).
  bool terminated = false;
  // Sustained term growth was detected: the point lies outside the
  // admissible domain of the displacement series.
  bool diverged = false;
  // Magnitude of the last accumulated term.
  double last_term = 0.0;
};

// Momentum-weight series: G_0 = 1, G_{k+1} = g^2 (G_k / g)', summed as
// G = sum_k (-1)^k G_k / k!.  Throws DivisionByGenerator when g vanishes at
// the evaluation point.  Non-convergence within K terms is flagged in the
// diagnostics, not fatal.
ScalarField series_G(const ScalarField& g, int K, double tol);

// Forward displacement series: f_1 = g, f_{k+1} = g f_k', f = sum_k f_k / k!.
// Points where the terms grow without bound are outside the admissible
// domain; evaluation there throws DomainError.
ScalarField series_f(const ScalarField& g, int K, double tol);

// Alternating displacement series F = sum_k (-1)^k f_k / k!; converges on
// the whole domain of g for the generators in the catalog.
ScalarField series_F(const ScalarField& g, int K, double tol);

// All three series for one generator, sharing parameters, plus per-point
// diagnostics for tests and reporting.
class TransformSeries {
 public:
  TransformSeries(ScalarField g, int K, double tol);

  const ScalarField& g() const { return g_; }
  int K() const { return K_; }
  double tol() const { return tol_; }

  const ScalarField& G() const { return G_; }
  const ScalarField& f() const { return f_; }
  const ScalarField& F() const { return F_; }

  SeriesDiagnostics diagnose_G(double x) const;
  // f and F share term magnitudes, hence diagnostics.
  SeriesDiagnostics diagnose_f(double x) const;

 private:
  ScalarField g_, G_, f_, F_;
  int K_;
  double tol_;
};

// Transformed potential before the coordinate shift:
//   kStandard:  V + (1/8) (G^2)'' - (1/8) (G')^2
//   kAlternate: V - (1/8) (G^2)'' + (1/2) (G')^2
ScalarField v_tilde(const ScalarField& V, const ScalarField& G,
                    CorrectionConvention convention);

struct TransformedPotential {
  ScalarField V;        // input
  ScalarField g;        // generator
  ScalarField G;        // momentum weight (series)
  ScalarField f;        // forward displacement (series)
  ScalarField v_tilde;  // corrected potential, pre-shift
  ScalarField W;        // v_tilde evaluated at x + f(x)
  CorrectionConvention convention;
};

// Full pipeline: series for G and f, corrected potential, and the shifted
// potential W(x) = v_tilde(x + f(x)).  Evaluation is lazy; points where the
// displacement series diverges raise DomainError when sampled.
TransformedPotential transformed_potential(const ScalarField& V,
                                           const ScalarField& g, int K,
                                           double tol,
                                           CorrectionConvention convention);

// Evaluates `field` on every grid node; if evaluation fails part-way, throws
// DomainError naming the admissible prefix of the grid.
void require_admissible(const ScalarField& field, const GridSpec& grid);

// sup_i |G(x_i)^2 m(x_i) - 1| over the grid nodes: the mass-consistency
// defect of the summed momentum weight.  Returns the defect; a mismatched
// (m, g) pair yields a large value rather than an exception.
double verify_mass_consistency(const ScalarField& m, const ScalarField& g,
                               const GridSpec& grid, int K, double tol);

}  // namespace pdm
