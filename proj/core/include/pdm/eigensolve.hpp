#pragma once

#include <string>
#include <vector>

#include "pdm/operators.hpp"

namespace pdm {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // normalized in the h-weighted norm
};

// Number of eigenvalues of the symmetric tridiagonal operator strictly
// below `lambda` (Sturm sequence count with pivot protection).
int sturm_count(const TridiagonalOperator& op, double lambda);

// Operator magnitude used for all relative tolerances:
// max|diag| + 2 max|offdiag|.
double operator_scale(const TridiagonalOperator& op);

// k smallest eigenvalues by Sturm-count bisection inside the Gershgorin
// bracket, resolved to 1e-12 * operator_scale.  Requires 1 <= k <= n.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k);

// Eigenvalues plus inverse-iteration eigenvectors (at most 4 refinement
// passes; near-degenerate values, gap < 1e-8 * scale, are reorthogonalized
// as a cluster).  Throws IterationStall, carrying the level index, if a
// residual fails to reach 1e-9 * scale.
std::vector<EigenPair> lowest_eigenpairs(const TridiagonalOperator& op, int k);

struct SpectrumReport {
  std::string label_a, label_b;
  std::vector<double> values_a, values_b;
  std::vector<double> abs_diff, rel_diff;
  double max_rel_diff = 0.0;
};

// Compares the k lowest levels of two operators (typically a mass-side and
// a transformed-side Hamiltonian on their own grids).
SpectrumReport spectrum_compare(const TridiagonalOperator& a,
                                const TridiagonalOperator& b, int k);

// Dense symmetric eigenvalues via cyclic Jacobi sweeps, ascending.  Small
// matrices only; this is the independent cross-check oracle for the
// tridiagonal path, deliberately sharing no code with it.
std::vector<double> dense_symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace pdm
