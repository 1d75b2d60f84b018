#include "pdm/transform.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "pdm/errors.hpp"
#include "pdm/jet.hpp"

namespace pdm {

namespace {

struct GSum {
  Jet sum;
  SeriesDiagnostics diag;
};

// Momentum-weight recursion, division-free form: G_{k+1} = g G_k' - g' G_k
// is identical to g^2 (G_k / g)' wherever g != 0; the division's observable
// contract (failure where g vanishes) is kept as an explicit check.
GSum sum_G(const ScalarField& g, double x0, int p, int K, double tol) {
  const int N = p + K;
  Jet gj = g.jet(x0, N);
  if (std::abs(gj.value()) < std::numeric_limits<double>::min()) {
    std::ostringstream os;
    os << "momentum-weight recursion divides by the generator, which "
          "vanishes at x = "
       << x0;
    throw DivisionByGenerator(os.str());
  }
  Jet gd = gj.differentiated();
  Jet g_k = Jet::constant(1.0, N);
  Jet sum = g_k.truncated(p);
  SeriesDiagnostics diag;
  double k_factorial = 1.0;
  for (int k = 1; k <= K; ++k) {
    Jet t1 = gj * g_k.differentiated();
    Jet t2 = gd * g_k;
    Jet next = t1 - t2;
    const double cancel_scale = t1.max_abs_coeff() + t2.max_abs_coeff();
    if (next.max_abs_coeff() <= 1e-12 * cancel_scale) {
      // The recursion reached an exact zero; all later terms vanish too.
      diag.terminated = true;
      if (diag.converged_at < 0) diag.converged_at = k;
      break;
    }
    g_k = std::move(next);
    k_factorial *= k;
    const double coef = (k % 2 ? -1.0 : 1.0) / k_factorial;
    Jet term = (coef * g_k).truncated(p);
    sum += term;
    const double term_mag = term.max_abs_coeff();
    diag.last_term = term_mag;
    if (term_mag < tol * (1.0 + sum.max_abs_coeff())) {
      diag.converged_at = k;
      break;
    }
  }
  return {sum.truncated(p), diag};
}

struct FSum {
  Jet f;
  Jet F;
  SeriesDiagnostics diag;
};

// Displacement recursion f_1 = g, f_{k+1} = g f_k'; both the plain and the
// alternating sum share term magnitudes, so they are accumulated together.
FSum sum_f(const ScalarField& g, double x0, int p, int K, double tol) {
  const int N = p + K;
  Jet gj = g.jet(x0, N);
  Jet f_k = gj;
  Jet f_sum = f_k.truncated(p);
  Jet big_f_sum = -1.0 * f_sum;
  SeriesDiagnostics diag;
  diag.last_term = f_sum.max_abs_coeff();
  double k_factorial = 1.0;
  double prev_mag = diag.last_term;
  int growth_run = 0;
  for (int k = 2; k <= K; ++k) {
    f_k = gj * f_k.differentiated();
    k_factorial *= k;
    Jet term = ((1.0 / k_factorial) * f_k).truncated(p);
    f_sum += term;
    big_f_sum += (k % 2 ? -1.0 : 1.0) * term;
    const double term_mag = term.max_abs_coeff();
    diag.last_term = term_mag;
    if (term_mag == 0.0) {
      diag.terminated = true;
      if (diag.converged_at < 0) diag.converged_at = k;
      break;
    }
    if (term_mag < tol * (1.0 + f_sum.max_abs_coeff())) {
      diag.converged_at = k;
      break;
    }
    if (k > 5) {
      if (term_mag > prev_mag) {
        if (++growth_run >= 3) {
          diag.diverged = true;
          break;
        }
      } else {
        growth_run = 0;
      }
    }
    prev_mag = term_mag;
  }
  return {std::move(f_sum), std::move(big_f_sum), std::move(diag)};
}

int series_max_order(const ScalarField& g, int K) {
  const int m = g.max_jet_order();
  if (m >= ScalarField::kUnlimitedOrder) return ScalarField::kUnlimitedOrder;
  return m > K ? m - K : 0;
}

void check_series_params(const char* who, int K, double tol) {
  if (K < 1) {
    std::ostringstream os;
    os << who << ": term count K must be >= 1, got " << K;
    throw ParamError(os.str());
  }
  if (!(tol > 0.0)) {
    std::ostringstream os;
    os << who << ": tolerance must be positive, got " << tol;
    throw ParamError(os.str());
  }
}

void throw_divergence(const ScalarField& g, double x0) {
  std::ostringstream os;
  os << "displacement series diverges at x = " << x0
     << " (sustained term growth); the point lies outside the admissible "
        "domain of the generator '"
     << g.label() << "'";
  throw DomainError(os.str());
}

}  // namespace

std::string to_string(CorrectionConvention c) {
  return c == CorrectionConvention::kStandard ? "standard" : "alternate";
}

ScalarField series_G(const ScalarField& g, int K, double tol) {
  check_series_params("series_G", K, tol);
  auto fn = [g, K, tol](double x0, int p) { return sum_G(g, x0, p, K, tol).sum; };
  std::ostringstream label;
  label << "G-series[K=" << K << "] of " << g.label();
  return ScalarField::from_jet_function(fn, g.domain(), series_max_order(g, K),
                                        label.str());
}

ScalarField series_f(const ScalarField& g, int K, double tol) {
  check_series_params("series_f", K, tol);
  auto fn = [g, K, tol](double x0, int p) {
    FSum s = sum_f(g, x0, p, K, tol);
    if (s.diag.diverged) throw_divergence(g, x0);
    return s.f;
  };
  std::ostringstream label;
  label << "f-series[K=" << K << "] of " << g.label();
  return ScalarField::from_jet_function(fn, g.domain(), series_max_order(g, K),
                                        label.str());
}

ScalarField series_F(const ScalarField& g, int K, double tol) {
  check_series_params("series_F", K, tol);
  auto fn = [g, K, tol](double x0, int p) {
    FSum s = sum_f(g, x0, p, K, tol);
    if (s.diag.diverged) throw_divergence(g, x0);
    return s.F;
  };
  std::ostringstream label;
  label << "F-series[K=" << K << "] of " << g.label();
  return ScalarField::from_jet_function(fn, g.domain(), series_max_order(g, K),
                                        label.str());
}

TransformSeries::TransformSeries(ScalarField g, int K, double tol)
    : g_(std::move(g)),
      G_(series_G(g_, K, tol)),
      f_(series_f(g_, K, tol)),
      F_(series_F(g_, K, tol)),
      K_(K),
      tol_(tol) {}

SeriesDiagnostics TransformSeries::diagnose_G(double x) const {
  require_inside(g_.domain(), x, "TransformSeries::diagnose_G");
  return sum_G(g_, x, 0, K_, tol_).diag;
}

SeriesDiagnostics TransformSeries::diagnose_f(double x) const {
  require_inside(g_.domain(), x, "TransformSeries::diagnose_f");
  return sum_f(g_, x, 0, K_, tol_).diag;
}

ScalarField v_tilde(const ScalarField& V, const ScalarField& G,
                    CorrectionConvention convention) {
  ScalarField g_squared = G * G;
  ScalarField g_prime = G.derivative(1);
  ScalarField result =
      convention == CorrectionConvention::kStandard
          ? V + 0.125 * g_squared.derivative(2) - 0.125 * (g_prime * g_prime)
          : V - 0.125 * g_squared.derivative(2) + 0.5 * (g_prime * g_prime);
  std::ostringstream label;
  label << "v_tilde[" << to_string(convention) << "] of " << V.label();
  return result.with_label(label.str());
}

TransformedPotential transformed_potential(const ScalarField& V,
                                           const ScalarField& g, int K,
                                           double tol,
                                           CorrectionConvention convention) {
  TransformSeries s(g, K, tol);
  ScalarField vt = v_tilde(V, s.G(), convention);
  ScalarField w = ScalarField::compose_shift(vt, s.f())
                      .with_label("W(x) = v_tilde(x + f(x))");
  return TransformedPotential{V,  g, s.G(), s.f(), std::move(vt),
                              std::move(w), convention};
}

void require_admissible(const ScalarField& field, const GridSpec& grid) {
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    try {
      (void)field(x);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "field '" << field.label() << "' is admissible only on a prefix "
         << "of the requested grid [" << grid.x_min << ", " << grid.x_max
         << "]: ";
      if (i == 0) {
        os << "no node is admissible";
      } else {
        os << "admissible up to node " << i - 1 << " (x = " << grid.node(i - 1)
           << ")";
      }
      os << "; first failure at node " << i << " (x = " << x
         << "): " << e.what();
      throw DomainError(os.str());
    }
  }
}

double verify_mass_consistency(const ScalarField& m, const ScalarField& g,
                               const GridSpec& grid, int K, double tol) {
  ScalarField big_g = series_G(g, K, tol);
  double worst = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    const double gv = big_g(x);
    const double defect = std::abs(gv * gv * m(x) - 1.0);
    if (defect > worst) worst = defect;
  }
  return worst;
}

}  // namespace pdm
