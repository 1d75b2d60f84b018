#pragma once

#include <string>
#include <vector>

#include "pdm/grid.hpp"
#include "pdm/scalar_field.hpp"

namespace pdm {

// Real symmetric tridiagonal operator on the interior nodes of a grid with
// Dirichlet walls.  diag has grid.n entries, offdiag has grid.n - 1.
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
  GridSpec grid;
  std::string label;

  int size() const { return static_cast<int>(diag.size()); }
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Dense real operator (row-major).  The discrete transformation below is
// real-orthogonal -- its generator has purely imaginary off-diagonals, so
// the Cayley steps never leave real arithmetic -- hence no complex storage.
struct DenseOperator {
  int n = 0;
  std::vector<double> entries;  // row-major n*n
  GridSpec grid;
  std::string label;

  explicit DenseOperator(const GridSpec& grid_, std::string label_ = {});

  double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> apply_transpose(const std::vector<double>& x) const;
  DenseOperator transposed() const;
};

// Exponent triple (a, b, c) of the kinetic ordering
//   (1/4) (m^a p m^b p m^c + m^c p m^b p m^a),  a + b + c = -1.
struct OrderingParams {
  double a = 0.0;
  double b = -1.0;
  double c = 0.0;
};

// Kinetic ordering with the mass sampled at half nodes:
//   diag_i = [1/m(x_{i-1/2}) + 1/m(x_{i+1/2})]/(2 h^2) + V(x_i)
//   off_i  = -1/(2 h^2 m(x_{i+1/2}))
// Throws MassSignError if the sampled mass is not strictly positive.
TridiagonalOperator hamiltonian_bdd(const ScalarField& m, const ScalarField& V,
                                    const GridSpec& grid);

// Negative control for the validation suite: identical to hamiltonian_bdd
// except every half-node mass sample is displaced by one full step h.  The
// resulting operator is still symmetric but discretizes the wrong operator;
// a healthy pipeline must detect it.
TridiagonalOperator hamiltonian_bdd_misaligned(const ScalarField& m,
                                               const ScalarField& V,
                                               const GridSpec& grid);

// General two-sided symmetrized ordering.  Requires a + b + c = -1 to within
// 1e-12 (OrderingConstraintError otherwise); (0, -1, 0) reproduces
// hamiltonian_bdd to machine precision.
TridiagonalOperator hamiltonian_vonroos(const ScalarField& m,
                                        const ScalarField& V,
                                        const OrderingParams& ordering,
                                        const GridSpec& grid);

// Constant-mass Hamiltonian -d^2/(2 m0 dx^2) + V.
TridiagonalOperator hamiltonian_constant(const ScalarField& V,
                                         const GridSpec& grid,
                                         double m0 = 1.0);

// Unit-time Cayley propagation of the symmetrized generator
// (p g + g p)/2 with p = -i * (centered difference).  Each of the n_steps
// substeps is an exactly norm-preserving Cayley fraction; the factorization
// of the step matrix is done once.
class CayleyPropagator {
 public:
  CayleyPropagator(const ScalarField& g, const GridSpec& grid, int n_steps);

  int size() const { return static_cast<int>(b_.size()) + 1; }
  int n_steps() const { return n_steps_; }
  // Off-diagonal weights b_i = (g_i + g_{i+1})/(4h) of the generator; the
  // generator's Hermiticity is manifest in this shared-coefficient storage.
  const std::vector<double>& generator_offdiagonal() const { return b_; }

  // One Cayley substep in place.
  void step(std::vector<double>& psi) const;
  // All n_steps substeps: the full unit-time transformation.
  void propagate(std::vector<double>& psi) const;

 private:
  std::vector<double> b_;
  std::vector<double> c_;  // (1 / (2 n_steps)) * b: half-step couplings
  // Pivoted LU of the (real, tridiagonal-plus-fill) step matrix.
  std::vector<double> lu_dl_, lu_d_, lu_du_, lu_du2_;
  std::vector<int> lu_piv_;
  int n_steps_;
};

// Dense matrix of the unit-time discrete transformation, built by
// propagating each basis column.  Orthogonal up to the Cayley splitting
// error (the splitting, not the steps, is the only approximation).
DenseOperator discrete_T(const ScalarField& g, const GridSpec& grid,
                         int n_steps);

// max |(U^T U - I)_{ij}|: the unitarity defect of a dense operator.
double unitarity_defect(const DenseOperator& u);

// Gaussian probe state exp(-(x - center)^2 / (2 sigma^2)) on the grid
// nodes, normalized in the h-weighted norm.
std::vector<double> gaussian_probe(const GridSpec& grid, double center,
                                   double sigma);

// Worst relative conjugation residual over the probes:
//   || T^T (H (T psi)) - H_target psi || / || H_target psi ||
// in the h-weighted norm restricted to the interior 60% of the grid.
// Throws ProbeEscape if a probe, or its transformed image, has support
// (above 1e-6 of its peak) within 10 nodes of a wall.
double conjugation_residual(const TridiagonalOperator& h_pdm,
                            const DenseOperator& t,
                            const TridiagonalOperator& h_target,
                            const std::vector<std::vector<double>>& probes);

}  // namespace pdm
