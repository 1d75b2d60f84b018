#include "pdm/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// LU factorization of (op - shift I) with partial pivoting; tiny pivots are
// replaced (inverse iteration relies on solving nearly singular systems).
struct ShiftedLu {
  std::vector<double> dl, d, du, du2;
  std::vector<int> piv;

  ShiftedLu(const TridiagonalOperator& op, double shift, double pivot_floor) {
    const int n = op.size();
    d.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      d[static_cast<std::size_t>(i)] = op.diag[static_cast<std::size_t>(i)] - shift;
    }
    dl.assign(op.offdiag.begin(), op.offdiag.end());
    du.assign(op.offdiag.begin(), op.offdiag.end());
    du2.assign(n >= 2 ? static_cast<std::size_t>(n) - 2 : 0, 0.0);
    piv.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) piv[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i + 1 < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (std::abs(d[s]) >= std::abs(dl[s])) {
        piv[s] = i;
        if (std::abs(d[s]) < pivot_floor) {
          d[s] = d[s] < 0.0 ? -pivot_floor : pivot_floor;
        }
        const double fact = dl[s] / d[s];
        dl[s] = fact;
        d[s + 1] -= fact * du[s];
        if (i + 2 < n) du2[s] = 0.0;
      } else {
        piv[s] = i + 1;
        const double fact = d[s] / dl[s];
        d[s] = dl[s];
        dl[s] = fact;
        const double temp = du[s];
        du[s] = d[s + 1];
        d[s + 1] = temp - fact * d[s + 1];
        if (i + 2 < n) {
          du2[s] = du[s + 1];
          du[s + 1] = -fact * du[s + 1];
        }
      }
    }
    const std::size_t last = static_cast<std::size_t>(n) - 1;
    if (std::abs(d[last]) < pivot_floor) {
      d[last] = d[last] < 0.0 ? -pivot_floor : pivot_floor;
    }
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i + 1 < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (piv[s] == i) {
        b[s + 1] -= dl[s] * b[s];
      } else {
        const double temp = b[s];
        b[s] = b[s + 1];
        b[s + 1] = temp - dl[s] * b[s];
      }
    }
    const std::size_t last = static_cast<std::size_t>(n) - 1;
    b[last] /= d[last];
    if (n > 1) {
      b[last - 1] = (b[last - 1] - du[last - 1] * b[last]) / d[last - 1];
    }
    for (int i = n - 3; i >= 0; --i) {
      const std::size_t s = static_cast<std::size_t>(i);
      b[s] = (b[s] - du[s] * b[s + 1] - du2[s] * b[s + 2]) / d[s];
    }
  }
};

double euclid_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Deterministic quasi-random start vector for inverse iteration.
std::vector<double> start_vector(int n, int level) {
  std::vector<double> b(static_cast<std::size_t>(n));
  std::uint64_t state = 0x9e3779b97f4a7c15ull + 0x61c88647u * static_cast<std::uint64_t>(level + 1);
  for (int i = 0; i < n; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    b[static_cast<std::size_t>(i)] =
        static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  const double norm = euclid_norm(b);
  for (double& x : b) x /= norm;
  return b;
}

void validate_k(const TridiagonalOperator& op, int k, const char* who) {
  if (k < 1 || k > op.size()) {
    std::ostringstream os;
    os << who << ": requested " << k << " levels from an operator of size "
       << op.size();
    throw ParamError(os.str());
  }
}

}  // namespace

double operator_scale(const TridiagonalOperator& op) {
  double d = 0.0, o = 0.0;
  for (double v : op.diag) d = std::max(d, std::abs(v));
  for (double v : op.offdiag) o = std::max(o, std::abs(v));
  return d + 2.0 * o;
}

int sturm_count(const TridiagonalOperator& op, double lambda) {
  const int n = op.size();
  double bmax2 = 0.0;
  for (double v : op.offdiag) bmax2 = std::max(bmax2, v * v);
  const double pivmin =
      std::max(bmax2 * kEps, std::numeric_limits<double>::min());
  int count = 0;
  double d = op.diag[0] - lambda;
  if (std::abs(d) <= pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    d = (op.diag[s] - lambda) - op.offdiag[s - 1] * op.offdiag[s - 1] / d;
    if (std::abs(d) <= pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k) {
  validate_k(op, k, "lowest_eigenvalues");
  const int n = op.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    double r = 0.0;
    if (i > 0) r += std::abs(op.offdiag[s - 1]);
    if (i + 1 < n) r += std::abs(op.offdiag[s]);
    lo = std::min(lo, op.diag[s] - r);
    hi = std::max(hi, op.diag[s] + r);
  }
  const double scale = operator_scale(op);
  const double width_tol = std::max(1e-12 * std::max(scale, 1.0),
                                    8.0 * kEps * std::max(std::abs(lo), std::abs(hi)));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(k));
  double bracket_lo = lo;
  for (int j = 0; j < k; ++j) {
    double a = bracket_lo, b = hi;
    while (b - a > width_tol) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(op, mid) >= j + 1) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values.push_back(0.5 * (a + b));
    bracket_lo = a;  // the next eigenvalue cannot lie below this one
  }
  return values;
}

std::vector<EigenPair> lowest_eigenpairs(const TridiagonalOperator& op, int k) {
  validate_k(op, k, "lowest_eigenpairs");
  const int n = op.size();
  const double scale = operator_scale(op);
  const double gap_tol = 1e-8 * std::max(scale, 1.0);
  const double resid_tol = std::max(1e-11 * scale, 1e-14);
  const double pivot_floor = std::max(kEps * scale, std::numeric_limits<double>::min());
  const std::vector<double> values = lowest_eigenvalues(op, k);
  std::vector<EigenPair> pairs(static_cast<std::size_t>(k));
  int cluster_start = 0;
  for (int j = 0; j < k; ++j) {
    const double lambda = values[static_cast<std::size_t>(j)];
    if (j > 0 && lambda - values[static_cast<std::size_t>(j) - 1] >= gap_tol) {
      cluster_start = j;
    }
    ShiftedLu lu(op, lambda, pivot_floor);
    std::vector<double> x = start_vector(n, j);
    double resid = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 4; ++pass) {
      lu.solve(x);
      // Project out previously found members of the same near-degenerate
      // cluster so inverse iteration cannot collapse onto them.
      for (int c = cluster_start; c < j; ++c) {
        const std::vector<double>& prev = pairs[static_cast<std::size_t>(c)].vector;
        double dot = 0.0;
        for (int i = 0; i < n; ++i) {
          dot += prev[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] -= dot * prev[static_cast<std::size_t>(i)];
        }
      }
      const double norm = euclid_norm(x);
      if (norm == 0.0) {
        x = start_vector(n, j + 101);
        continue;
      }
      for (double& v : x) v /= norm;
      const std::vector<double> hx = op.apply(x);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = hx[static_cast<std::size_t>(i)] -
                         lambda * x[static_cast<std::size_t>(i)];
        acc += d * d;
      }
      resid = std::sqrt(acc);
      if (resid <= resid_tol) break;
    }
    if (resid > resid_tol) {
      std::ostringstream os;
      os << "inverse iteration stalled at level " << j << ": residual "
         << resid << " above " << resid_tol << " after 4 passes";
      throw IterationStall(os.str(), j);
    }
    pairs[static_cast<std::size_t>(j)].value = lambda;
    pairs[static_cast<std::size_t>(j)].vector = std::move(x);
  }
  // Normalize in the h-weighted norm: h * sum psi_i^2 = 1.
  const double inv_sqrt_h = 1.0 / std::sqrt(op.grid.h());
  for (auto& p : pairs) {
    for (double& v : p.vector) v *= inv_sqrt_h;
  }
  return pairs;
}

SpectrumReport spectrum_compare(const TridiagonalOperator& a,
                                const TridiagonalOperator& b, int k) {
  validate_k(a, k, "spectrum_compare (first operator)");
  validate_k(b, k, "spectrum_compare (second operator)");
  SpectrumReport rep;
  rep.label_a = a.label;
  rep.label_b = b.label;
  rep.values_a = lowest_eigenvalues(a, k);
  rep.values_b = lowest_eigenvalues(b, k);
  rep.abs_diff.resize(static_cast<std::size_t>(k));
  rep.rel_diff.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const double va = rep.values_a[s], vb = rep.values_b[s];
    rep.abs_diff[s] = std::abs(va - vb);
    rep.rel_diff[s] =
        rep.abs_diff[s] / std::max({std::abs(va), std::abs(vb), 1e-30});
    rep.max_rel_diff = std::max(rep.max_rel_diff, rep.rel_diff[s]);
  }
  return rep;
}

std::vector<double> dense_symmetric_eigenvalues(std::vector<double> a, int n) {
  if (n < 1 || static_cast<std::size_t>(n) * n != a.size()) {
    throw ParamError("dense_symmetric_eigenvalues: bad dimensions");
  }
  auto at = [&a, n](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  double total = 0.0;
  for (double v : a) total += v * v;
  const double stop = 1e-28 * std::max(total, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace pdm
