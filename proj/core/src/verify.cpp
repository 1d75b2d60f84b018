#include "pdm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/errors.hpp"
#include "pdm/flow.hpp"
#include "pdm/operators.hpp"

namespace pdm {

namespace {

constexpr int kSeriesTermsDeep = 128;  // evaluation up to q ~ 0.78 needs a deep tail
constexpr int kSeriesTermsFlowCompare = 96;
constexpr double kSeriesTol = 1e-10;
constexpr std::uint64_t kSeed = 20260814ull;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

// Accumulates sub-check lines and turns them into one CheckResult.
class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void sub(const std::string& label, double residual, double threshold) {
    const double ratio = residual / threshold;
    worst_ = std::max(worst_, ratio);
    std::ostringstream os;
    os << label << ": " << fmt(residual) << (ratio <= 1.0 ? " <= " : " EXCEEDS ")
       << fmt(threshold);
    lines_.push_back(os.str());
  }

  void sub_flag(const std::string& label, bool ok) {
    worst_ = std::max(worst_, ok ? 0.0 : 2.0);
    lines_.push_back(label + (ok ? ": ok" : ": FAILED"));
  }

  void note(const std::string& label) { lines_.push_back(label); }

  void skip(const std::string& label) {
    skipped_ = true;
    lines_.push_back(label + ": SKIPPED");
  }

  CheckResult finish() {
    CheckResult r;
    r.name = name_;
    r.residual = worst_;
    r.threshold = 1.0;
    if (worst_ > 1.0) {
      r.status = CheckStatus::kFail;
    } else if (skipped_) {
      r.status = CheckStatus::kSkipped;
    } else {
      r.status = CheckStatus::kPass;
    }
    const auto end = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(end - start_).count();
    std::ostringstream os;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) os << "; ";
      os << lines_[i];
    }
    r.detail = os.str();
    return r;
  }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> lines_;
  double worst_ = 0.0;
  bool skipped_ = false;
};

// Largest |psi| at the two wall-adjacent nodes over the k lowest
// h-normalized eigenvectors; levels are wall-insensitive when this is tiny.
double wall_tail(const TridiagonalOperator& op, int k) {
  const std::vector<EigenPair> pairs = lowest_eigenpairs(op, k);
  double worst = 0.0;
  for (const auto& p : pairs) {
    worst = std::max(worst, std::abs(p.vector.front()));
    worst = std::max(worst, std::abs(p.vector.back()));
  }
  return worst;
}

TridiagonalOperator build_bdd(const ScalarField& m, const ScalarField& V,
                              const GridSpec& grid, const VerifyOptions& opts) {
  return opts.corrupt_stencil ? hamiltonian_bdd_misaligned(m, V, grid)
                              : hamiltonian_bdd(m, V, grid);
}

// ---- A1: series vs closed forms --------------------------------------------

CheckResult check_a1() {
  CheckBuilder b("A1");
  const double alpha = 1.0, beta = 0.5;
  const ScalarField g = generator_for_mass(alpha, beta);
  const double xs = -std::log(alpha * beta) / beta;
  const std::vector<double> pts = linspace(-6.0, xs - 0.5, 50);

  const ScalarField fs = series_f(g, kSeriesTermsDeep, kSeriesTol);
  const ScalarField big_fs = series_F(g, kSeriesTermsDeep, kSeriesTol);
  const ScalarField gs = series_G(g, 24, kSeriesTol);
  const ScalarField fc = f_closed(alpha, beta);
  const ScalarField big_fc = F_closed(alpha, beta);
  const ScalarField gc = G_closed(alpha, beta);

  double worst_f = 0.0, worst_big_f = 0.0, worst_g = 0.0;
  for (double x : pts) {
    worst_f = std::max(worst_f, std::abs(fs(x) - fc(x)));
    worst_big_f = std::max(worst_big_f, std::abs(big_fs(x) - big_fc(x)));
    worst_g = std::max(worst_g, std::abs(gs(x) - gc(x)));
  }
  b.sub("sup|f_series - f_closed|", worst_f, 1e-8);
  b.sub("sup|F_series - F_closed|", worst_big_f, 1e-8);
  b.sub("sup|G_series - G_closed| (terminating)", worst_g, 1e-12);
  CheckResult r = b.finish();
  // The runtime bound is part of the criterion.  The measured time lives in
  // the `seconds` field; the detail string stays free of wall-clock values
  // so that reports are reproducible run to run.
  if (r.seconds >= 1.0) {
    r.status = CheckStatus::kFail;
    r.residual = std::max(r.residual, r.seconds / 1.0);
    r.detail += "; series wall time EXCEEDS the 1s budget";
  } else {
    r.detail += "; series wall time within the 1s budget";
  }
  return r;
}

// ---- A2: momentum-weight / mass consistency ---------------------------------

CheckResult check_a2(const VerifyOptions& opts) {
  CheckBuilder b("A2");
  const double alpha = 1.0, beta = 0.5;
  const double xs = -std::log(alpha * beta) / beta;
  const ScalarField m = mass_family(alpha, beta);
  const double g_alpha = opts.mismatch_mass_generator ? 1.35 * alpha : alpha;
  const ScalarField g = generator_for_mass(g_alpha, beta);
  if (opts.mismatch_mass_generator) {
    b.note("negative control: generator amplitude mismatched by 1.35x");
  }
  const GridSpec grid(-6.0, xs - 0.5, 50);
  const double defect = verify_mass_consistency(m, g, grid, 24, kSeriesTol);
  b.sub("sup|G^2 m - 1| (exponential pair)", defect, 1e-12);

  // Constant-mass pair: the generator that removes m0 from the kinetic term.
  // The grid deliberately avoids x = 0, where the weight series of a linear
  // generator is undefined as stated (division by the generator's zero).
  const double m0 = 2.0;
  const double const_defect =
      verify_mass_consistency(ScalarField::constant(m0),
                              mass_eliminating_generator(m0),
                              GridSpec(-3.0, 3.0, 20), 48, 1e-12);
  b.sub("sup|G^2 m0 - 1| (constant pair)", const_defect, 1e-10);
  return b.finish();
}

// ---- A3: constant-mass scaling baseline -------------------------------------

CheckResult check_a3() {
  CheckBuilder b("A3");
  const double m0 = 2.0;
  const double c = 0.5 * std::log(m0);
  const ScalarField g = linear_generator(c);
  const ScalarField fs = series_f(g, 48, 1e-12);
  const ScalarField big_fs = series_F(g, 48, 1e-12);
  const double root = std::sqrt(m0);
  double worst_f = 0.0, worst_big_f = 0.0;
  for (double x : {-1.5, -0.4, 0.3, 1.1, 2.0}) {
    worst_f = std::max(worst_f, std::abs(x + fs(x) - root * x));
    worst_big_f = std::max(worst_big_f, std::abs(x + big_fs(x) - x / root));
  }
  b.sub("sup|x + f - sqrt(m0) x| (scaling map)", worst_f, 1e-10);
  b.sub("sup|x + F - x/sqrt(m0)| (inverse map)", worst_big_f, 1e-10);

  // Spectra: p^2/(2 m0) + x^2/2 against p^2/2 + V(x/sqrt(m0)) = p^2/2 + x^2/4;
  // both should sit on the (n + 1/2)/sqrt(2) ladder.
  const GridSpec grid(-12.0, 12.0, 2000);
  const TridiagonalOperator ha =
      hamiltonian_constant(quadratic_field(0.5), grid, m0);
  const TridiagonalOperator hb =
      hamiltonian_constant(quadratic_field(0.25), grid, 1.0);
  const int k = 4;
  const double tail = std::max(wall_tail(ha, k), wall_tail(hb, k));
  if (tail > 1e-8) {
    b.skip("wall tail " + fmt(tail) + " above 1e-8: spectra not comparable");
    return b.finish();
  }
  const SpectrumReport rep = spectrum_compare(ha, hb, k);
  b.sub("harmonic pair max rel level diff", rep.max_rel_diff, 1e-4);
  double worst_exact = 0.0;
  for (int n = 0; n < k; ++n) {
    const double exact = (n + 0.5) / std::sqrt(2.0);
    const std::size_t s = static_cast<std::size_t>(n);
    worst_exact = std::max(
        worst_exact, std::abs(rep.values_a[s] - exact) / std::abs(exact));
    worst_exact = std::max(
        worst_exact, std::abs(rep.values_b[s] - exact) / std::abs(exact));
  }
  b.sub("harmonic levels vs (n+1/2)/sqrt(2) rel", worst_exact, 1e-4);
  return b.finish();
}

// ---- resolver ----------------------------------------------------------------

// Probe placement for grids without a hand-tuned protocol: five Gaussians
// spread between the walls, leaving room for a probe's transformed image,
// which the unit-time map can displace upward by up to max|F|.
std::vector<GaussianProbeSpec> default_probes(const ScalarField& g,
                                              const GridSpec& grid) {
  const double span = grid.x_max - grid.x_min;
  const double sigma = span / 16.0;
  double shift_room = 0.0;
  // Sample the backward displacement to bound the image excursion.
  for (double frac : {0.3, 0.5, 0.7, 0.9}) {
    const double x = grid.x_min + frac * span;
    if (!g.domain().contains(x)) continue;
    try {
      shift_room = std::max(shift_room, std::abs(F_oracle(g, x)));
    } catch (const Error&) {
      shift_room = std::max(shift_room, 0.2 * span);
    }
  }
  const double pad = 6.5 * sigma + 12.0 * grid.h();
  const double lo = grid.x_min + pad;
  const double hi = grid.x_max - pad - shift_room;
  std::vector<GaussianProbeSpec> probes;
  for (int i = 0; i < 5; ++i) {
    probes.push_back({lo + (hi - lo) * i / 4.0, sigma});
  }
  return probes;
}

ResolutionOutcome resolve_impl(const ExampleConfig& cfg, const GridSpec& grid,
                               int n_steps,
                               const std::vector<GaussianProbeSpec>& specs,
                               bool corrupt) {
  if (n_steps <= 0) n_steps = 2 * grid.n;
  const ScalarField m = mass_family(cfg.alpha, cfg.beta);
  const ScalarField g = generator_for_mass(cfg.alpha, cfg.beta);
  const ScalarField big_g = G_closed(cfg.alpha, cfg.beta);
  const ScalarField f = f_closed(cfg.alpha, cfg.beta);
  const DenseOperator t = discrete_T(g, grid, n_steps);
  std::vector<std::vector<double>> probes;
  probes.reserve(specs.size());
  for (const auto& s : specs) {
    probes.push_back(gaussian_probe(grid, s.center, s.sigma));
  }

  // A candidate (sign, convention) makes two claims: that its correction
  // formula is the one the discrete transformation actually realizes, and
  // that its resulting well is the advertised Morse destination with the
  // published depth/equilibrium formulas.  The transform residual alone
  // cannot separate the two signs -- each sign yields a self-consistent
  // (V, W) pair that conjugates equally well -- so every candidate is also
  // scored against the fixed destination, through the same probe-relative
  // machinery with the identity in place of the transformation.  When the
  // destination formulas are undefined for the supplied family there is no
  // external anchor and the transform residual is all that remains.
  std::optional<TridiagonalOperator> h_claim;
  std::optional<DenseOperator> eye;
  try {
    const MorseParams mp = morse_from_config(cfg);
    h_claim.emplace(hamiltonian_constant(morse_potential(mp), grid));
    DenseOperator e(grid, "identity");
    for (int i = 0; i < e.n; ++i) e.at(i, i) = 1.0;
    eye.emplace(std::move(e));
  } catch (const GammaUndefined&) {
    // No printed destination: fall back to self-consistency alone.
  }

  ResolutionOutcome out;
  for (SignChoice sign : {SignChoice::kPlus, SignChoice::kMinus}) {
    for (CorrectionConvention conv :
         {CorrectionConvention::kStandard, CorrectionConvention::kAlternate}) {
      const ScalarField v_cand = potential_family(cfg.with_sign(sign));
      const ScalarField vt = v_tilde(v_cand, big_g, conv);
      const ScalarField w = ScalarField::compose_shift(vt, f);
      const TridiagonalOperator h_pdm =
          corrupt ? hamiltonian_bdd_misaligned(m, v_cand, grid)
                  : hamiltonian_bdd(m, v_cand, grid);
      const TridiagonalOperator h_cand = hamiltonian_constant(w, grid);
      double r = conjugation_residual(h_pdm, t, h_cand, probes);
      if (h_claim) {
        r = std::max(r, conjugation_residual(h_cand, *eye, *h_claim, probes));
      }
      out.residuals.push_back({sign, conv, r});
    }
  }
  std::vector<CandidateResidual> ranked = out.residuals;
  std::sort(ranked.begin(), ranked.end(),
            [](const CandidateResidual& a, const CandidateResidual& b) {
              return a.residual < b.residual;
            });
  out.sign = ranked[0].sign;
  out.convention = ranked[0].convention;
  out.winner_residual = ranked[0].residual;
  out.runner_up_residual = ranked[1].residual;
  out.margin = ranked[0].residual > 0.0
                   ? ranked[1].residual / ranked[0].residual
                   : std::numeric_limits<double>::infinity();
  const double hi = ranked[3].residual;
  const double lo = ranked[0].residual;
  if (hi - lo <= std::max(1e-9, 1e-6 * hi)) {
    out.status = ResolutionStatus::kNotDiscriminating;
  } else if (out.winner_residual <= 1e-2 && out.margin >= 10.0) {
    out.status = ResolutionStatus::kResolved;
  } else {
    out.status = ResolutionStatus::kAmbiguous;
  }
  return out;
}

std::string describe(const ResolutionOutcome& o) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < o.residuals.size(); ++i) {
    const auto& c = o.residuals[i];
    if (i) os << ", ";
    os << to_string(c.sign) << "/" << to_string(c.convention) << "="
       << fmt(c.residual);
  }
  os << "] winner " << to_string(o.sign) << "/" << to_string(o.convention)
     << " margin " << fmt(o.margin) << " status " << to_string(o.status);
  return os.str();
}

// ---- A5 ----------------------------------------------------------------------

CheckResult check_a5(const VerifyOptions& opts, ResolutionOutcome& certified) {
  CheckBuilder b("A5");
  const ExampleConfig cfg = resolution_config();
  bool first = true;
  SignChoice first_sign = SignChoice::kMinus;
  CorrectionConvention first_conv = CorrectionConvention::kStandard;
  for (int n : {256, 512}) {
    ResolutionOutcome out = resolve_impl(cfg, resolution_grid(n), 2 * n,
                                         resolution_probes(),
                                         opts.corrupt_stencil);
    b.note("n=" + std::to_string(n) + " " + describe(out));
    b.sub("n=" + std::to_string(n) + " winner residual", out.winner_residual,
          1e-2);
    b.sub("n=" + std::to_string(n) + " margin shortfall (10/margin)",
          out.margin > 0.0 ? 10.0 / out.margin : 2.0, 1.0);
    b.sub_flag("n=" + std::to_string(n) + " status resolved",
               out.status == ResolutionStatus::kResolved);
    if (first) {
      certified = out;
      first_sign = out.sign;
      first_conv = out.convention;
      first = false;
    } else {
      b.sub_flag("winner stable across grids",
                 out.sign == first_sign && out.convention == first_conv);
    }
  }
  b.sub_flag("winner is minus/standard",
             first_sign == SignChoice::kMinus &&
                 first_conv == CorrectionConvention::kStandard);
  return b.finish();
}

// ---- A4 ----------------------------------------------------------------------

CheckResult check_a4(const VerifyOptions& opts,
                     const ResolutionOutcome& certified) {
  CheckBuilder b("A4");
  const SignChoice sign = opts.force_sign ? opts.forced_sign : certified.sign;
  const CorrectionConvention conv =
      opts.force_sign ? CorrectionConvention::kStandard : certified.convention;
  b.note("using sign " + to_string(sign) + ", convention " + to_string(conv) +
         (opts.force_sign ? " (forced)" : " (certified)"));

  // (i) transformed potential matches the closed-form well shape.
  const ExampleConfig cfg = acceptance_config().with_sign(sign);
  const ScalarField v = potential_family(cfg);
  const ScalarField g = generator_for_mass(cfg.alpha, cfg.beta);
  const ScalarField m = mass_family(cfg.alpha, cfg.beta);
  const MorseParams mp = morse_from_config(cfg);
  const ScalarField target = morse_potential(mp);
  // The comparison is normalized by the local target magnitude (floored at 1
  // so it stays absolute where the well is order one).  The target spans
  // 1.6e7 at the repulsive wall down to ~15 near the admissible edge, and an
  // absolute 1e-8 criterion at the wall would demand sub-ulp double
  // arithmetic.  The series tolerance is also tightened beyond the
  // report-wide default: near the edge the displacement tail sits at q ~ 0.78
  // and would otherwise leave ~1e-9 of itself in W.
  const TransformedPotential tp =
      transformed_potential(v, g, kSeriesTermsDeep, 1e-13, conv);
  const double xs = cfg.x_star();
  double worst_w = 0.0;
  for (double x : linspace(-6.0, xs - 0.5, 50)) {
    const double t = target(x);
    worst_w = std::max(
        worst_w, std::abs(tp.W(x) - t) / std::max(1.0, std::abs(t)));
  }
  b.sub("(i) sup|W - well target| (scaled)", worst_w, 1e-8);

  // (ii) bound-level comparison on the acceptance config.
  const GridSpec pdm_grid(-6.0, xs - 0.5, 2000);
  const TridiagonalOperator h_pdm = build_bdd(m, v, pdm_grid, opts);
  const int k = 4;
  const int found = sturm_count(h_pdm, mp.D_e);
  double v_floor = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pdm_grid.n; ++i) {
    v_floor = std::min(v_floor, v(pdm_grid.node(i)));
  }
  const GridSpec target_grid(mp.gamma - 8.0, mp.gamma + 22.0, 2000);
  const TridiagonalOperator h_target =
      hamiltonian_constant(morse_potential(mp), target_grid);
  const std::vector<double> target_levels = lowest_eigenvalues(h_target, k);
  if (found < k) {
    std::ostringstream os;
    os << "(ii) insufficient bound states below D_e = " << mp.D_e << ": found "
       << found << " of " << k << " (structural: equilibrium gamma = "
       << fmt(mp.gamma) << " exceeds the admissible edge x_star = " << fmt(xs)
       << " whenever a1 > 0, and the truncated potential floor "
       << fmt(v_floor) << " lies above D_e)";
    b.sub_flag(os.str(), false);
    b.sub_flag("(iii) mass-side spectrum vs textbook ladder: blocked by (ii)",
               false);
  } else {
    const std::vector<double> pdm_levels = lowest_eigenvalues(h_pdm, k);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      worst = std::max(worst,
                       std::abs(pdm_levels[s] - target_levels[s]) /
                           std::max(std::abs(target_levels[s]), 1e-30));
    }
    b.sub("(ii) bound-level rel diff", worst, 1e-3);
    double worst_formula = 0.0;
    for (int i = 0; i < k; ++i) {
      const double e = morse_level(mp, i);
      worst_formula =
          std::max(worst_formula, std::abs(pdm_levels[static_cast<std::size_t>(i)] - e) /
                                      std::abs(e));
    }
    b.sub("(iii) mass-side levels vs textbook ladder rel", worst_formula, 1e-3);
  }

  // (iii) continued: the constant-mass side is checkable regardless.
  {
    const double tail = wall_tail(h_target, k);
    if (tail > 1e-8) {
      b.skip("(iii) target-side wall tail " + fmt(tail));
    } else {
      double worst_formula = 0.0;
      for (int i = 0; i < k; ++i) {
        const double e = morse_level(mp, i);
        worst_formula = std::max(
            worst_formula,
            std::abs(target_levels[static_cast<std::size_t>(i)] - e) / std::abs(e));
      }
      b.sub("(iii) well-side levels vs textbook ladder rel", worst_formula,
            1e-3);
    }
  }

  // (iv) the same pipeline in its valid regime (a1 < 0 puts the equilibrium
  // inside the admissible domain): a genuine two-sided spectral comparison.
  {
    const ExampleConfig deep = deep_well_config().with_sign(sign);
    const ScalarField dv = potential_family(deep);
    const ScalarField dm = mass_family(deep.alpha, deep.beta);
    const MorseParams dmp = morse_from_config(deep);
    const double dxs = deep.x_star();
    const GridSpec dgrid(-6.0, dxs - 0.5, 2000);
    const TridiagonalOperator dh = build_bdd(dm, dv, dgrid, opts);
    const int dfound = sturm_count(dh, dmp.D_e);
    if (dfound < k) {
      b.sub_flag("(iv) valid-regime comparison: insufficient bound states (" +
                     std::to_string(dfound) + ")",
                 false);
    } else {
      const GridSpec dtgrid(dmp.gamma - 8.0, dmp.gamma + 22.0, 2000);
      const TridiagonalOperator dht =
          hamiltonian_constant(morse_potential(dmp), dtgrid);
      const double tail = std::max(wall_tail(dh, k), wall_tail(dht, k));
      if (tail > 1e-8) {
        b.skip("(iv) wall tail " + fmt(tail));
      } else {
        const SpectrumReport rep = spectrum_compare(dh, dht, k);
        b.sub("(iv) valid-regime bound-level rel diff (deep well)",
              rep.max_rel_diff, 1e-3);
      }
    }

    // Discretization-order certificate: eigenvalue drift shrinks ~4x per
    // grid doubling on the valid-regime mass-side operator.
    const std::vector<int> ns = {500, 1000, 2000};
    std::vector<std::vector<double>> levels;
    for (int n : ns) {
      const GridSpec gr(-6.0, dxs - 0.5, n);
      levels.push_back(lowest_eigenvalues(build_bdd(dm, dv, gr, opts), k));
    }
    double worst_ratio_dev = 0.0;
    std::ostringstream ratios;
    for (int i = 0; i < k; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      const double d1 = std::abs(levels[0][s] - levels[1][s]);
      const double d2 = std::abs(levels[1][s] - levels[2][s]);
      const double ratio = d2 > 0.0 ? d1 / d2 : 0.0;
      if (i) ratios << ",";
      ratios << fmt(ratio);
      const bool ok = ratio >= 2.5 && ratio <= 5.5;
      if (!ok) worst_ratio_dev = 2.0;
    }
    b.sub_flag("refinement ratios [" + ratios.str() + "] within [2.5, 5.5]",
               worst_ratio_dev == 0.0);
  }
  return b.finish();
}

// ---- A6 ----------------------------------------------------------------------

CheckResult check_a6() {
  CheckBuilder b("A6");
  const ExampleConfig cfg = resolution_config();
  const ScalarField g = generator_for_mass(cfg.alpha, cfg.beta);
  const GridSpec grid = resolution_grid(256);
  const int n_steps = 512;
  const DenseOperator t = discrete_T(g, grid, n_steps);
  b.sub("||T^T T - I||_max", unitarity_defect(t), 1e-9);

  CayleyPropagator prop(g, grid, n_steps);
  std::vector<double> psi =
      gaussian_probe(grid, 0.5 * (grid.x_min + grid.x_max) - 0.5, 0.7);
  auto h_norm = [&grid](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(grid.h() * acc);
  };
  double drift = 0.0;
  double prev = h_norm(psi);
  for (int s = 0; s < 8; ++s) {
    prop.step(psi);
    const double cur = h_norm(psi);
    drift = std::max(drift, std::abs(cur - prev) / prev);
    prev = cur;
  }
  b.sub("per-step norm drift", drift, 1e-12);

  const DenseOperator t_rev = discrete_T(-g, grid, n_steps);
  double inv_defect = 0.0;
  for (int i = 0; i < t.n; ++i) {
    for (int j = 0; j < t.n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < t.n; ++l) acc += t_rev.at(i, l) * t.at(l, j);
      if (i == j) acc -= 1.0;
      inv_defect = std::max(inv_defect, std::abs(acc));
    }
  }
  b.sub("||T(-g) T(g) - I||_max (reverse composition)", inv_defect, 1e-8);
  return b.finish();
}

// ---- A7 ----------------------------------------------------------------------

CheckResult check_a7(std::map<std::string, std::string>& env) {
  CheckBuilder b("A7");
  // Eigensolver vs an independent dense method on random small matrices.
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> diag_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> off_dist(-1.5, 1.5);
  const int nn = 8;
  double worst_eig = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    TridiagonalOperator op{std::vector<double>(nn), std::vector<double>(nn - 1),
                           GridSpec(0.0, 1.0, nn), "random tridiagonal"};
    for (auto& d : op.diag) d = diag_dist(rng);
    for (auto& o : op.offdiag) o = off_dist(rng);
    std::vector<double> dense(static_cast<std::size_t>(nn) * nn, 0.0);
    for (int i = 0; i < nn; ++i) {
      dense[static_cast<std::size_t>(i) * nn + i] = op.diag[static_cast<std::size_t>(i)];
      if (i + 1 < nn) {
        dense[static_cast<std::size_t>(i) * nn + i + 1] =
            op.offdiag[static_cast<std::size_t>(i)];
        dense[static_cast<std::size_t>(i + 1) * nn + i] =
            op.offdiag[static_cast<std::size_t>(i)];
      }
    }
    const std::vector<double> mine = lowest_eigenvalues(op, nn);
    const std::vector<double> oracle = dense_symmetric_eigenvalues(dense, nn);
    for (int i = 0; i < nn; ++i) {
      worst_eig = std::max(worst_eig,
                           std::abs(mine[static_cast<std::size_t>(i)] -
                                    oracle[static_cast<std::size_t>(i)]));
    }
  }
  b.sub("eigensolver vs dense oracle (100 x 8x8)", worst_eig, 1e-10);

  // Flow vs closed forms.
  const double alpha = 1.0, beta = 0.5;
  const ScalarField g = generator_for_mass(alpha, beta);
  const ScalarField fc = f_closed(alpha, beta);
  const ScalarField big_fc = F_closed(alpha, beta);
  double worst_flow = 0.0;
  for (double x : {-4.0, -2.0, -1.0, 0.0, 0.3}) {
    worst_flow = std::max(worst_flow, std::abs(f_oracle(g, x) - fc(x)));
  }
  for (double x : {-4.0, -2.0, 0.0, 1.0, 2.0}) {
    worst_flow = std::max(worst_flow, std::abs(F_oracle(g, x) - big_fc(x)));
  }
  {
    const ScalarField lin = linear_generator(0.5 * std::log(4.0));
    const FlowResult r = flow_map(lin, 1.0, FlowDirection::kForward);
    worst_flow = std::max(worst_flow, std::abs(r.x1 - 2.0));
  }
  b.sub("flow vs closed forms (exponential + linear)", worst_flow, 1e-9);

  // Flow vs the displacement series at random admissible points.
  const double x_top = 2.0 * std::log(0.6 / (alpha * beta));  // q <= 0.6
  std::uniform_real_distribution<double> pt_dist(-6.0, x_top);
  const ScalarField fs = series_f(g, kSeriesTermsFlowCompare, kSeriesTol);
  const ScalarField big_fs = series_F(g, kSeriesTermsFlowCompare, kSeriesTol);
  double worst_sf = 0.0;
  double worst_jac = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = pt_dist(rng);
    worst_sf = std::max(worst_sf, std::abs(fs(x) - f_oracle(g, x)));
    worst_sf = std::max(worst_sf, std::abs(big_fs(x) - F_oracle(g, x)));
    const FlowResult back = flow_map(g, x, FlowDirection::kBackward);
    worst_jac = std::max(worst_jac,
                         std::abs(back.jacobian * G_closed(alpha, beta)(x) - 1.0));
  }
  b.sub("series vs flow at 20 seeded admissible points", worst_sf, 1e-8);
  b.note("observed: backward-flow jacobian * G - 1 within " + fmt(worst_jac) +
         " (reported, not asserted)");
  env["flow_jacobian_times_G_minus_1"] = fmt(worst_jac);
  return b.finish();
}

// ---- A8 ----------------------------------------------------------------------

CheckResult check_a8() {
  CheckBuilder b("A8");
  const FigureData fd = make_figure_data();
  b.sub_flag("sample count 501 with exact x = 0 row",
             fd.x.size() == 501 && fd.x[300] == 0.0);
  // beta order is {0.5, 1, 2}: index 1 is beta = 1.
  b.sub("|m(0; beta=1) - 0.25|", std::abs(fd.mass[1][300] - 0.25), 1e-12);
  b.sub("|V(0; beta=1) - 2.125|", std::abs(fd.potential[1][300] - 2.125),
        1e-12);
  bool monotone = true;
  bool in_unit = true;
  for (const auto& col : fd.mass) {
    for (std::size_t i = 0; i + 1 < col.size(); ++i) {
      if (!(col[i + 1] < col[i])) monotone = false;
    }
    for (double v : col) {
      if (!(v > 0.0 && v < 1.0)) in_unit = false;
    }
  }
  b.sub_flag("every mass column strictly decreasing", monotone);
  b.sub_flag("every mass value inside (0, 1)", in_unit);
  return b.finish();
}

bool wants(const VerifyOptions& opts, const char* name) {
  return opts.only_check.empty() || opts.only_check == name;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

std::string to_string(ResolutionStatus s) {
  switch (s) {
    case ResolutionStatus::kResolved:
      return "resolved";
    case ResolutionStatus::kAmbiguous:
      return "ambiguous";
    case ResolutionStatus::kNotDiscriminating:
      return "not_discriminating";
  }
  return "unknown";
}

ResolutionOutcome resolve_sign_and_convention(const ExampleConfig& cfg,
                                              const GridSpec& grid,
                                              int n_steps) {
  const ScalarField g = generator_for_mass(cfg.alpha, cfg.beta);
  return resolve_impl(cfg, grid, n_steps, default_probes(g, grid), false);
}

ResolutionOutcome resolve_sign_and_convention(
    const ExampleConfig& cfg, const GridSpec& grid, int n_steps,
    const std::vector<GaussianProbeSpec>& probes) {
  return resolve_impl(cfg, grid, n_steps, probes, false);
}

void require_resolved(const ResolutionOutcome& outcome) {
  if (outcome.status == ResolutionStatus::kResolved) return;
  std::ostringstream os;
  os << "sign/convention resolution did not certify a unique pair: "
     << describe(outcome);
  throw AmbiguousResolution(os.str());
}

bool VerifyReport::all_passed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::kFail) return false;
  }
  return true;
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["status"] = to_string(c.status);
    jc["residual"] = c.residual;
    jc["threshold"] = c.threshold;
    jc["seconds"] = c.seconds;
    jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  j["resolved"]["a3_sign"] = to_string(resolved_sign);
  j["resolved"]["convention"] = to_string(resolved_convention);
  j["resolved"]["status"] = to_string(resolution_status);
  j["env"] = env;
  return j.dump(2);
}

std::vector<CheckResult> run_identity_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  if (wants(opts, "A1")) out.push_back(check_a1());
  if (wants(opts, "A2")) out.push_back(check_a2(opts));
  if (wants(opts, "A3")) out.push_back(check_a3());
  return out;
}

std::vector<CheckResult> run_spectral_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  if (!wants(opts, "A4")) return out;
  ResolutionOutcome certified;
  if (!opts.force_sign) {
    certified = resolve_impl(resolution_config(), resolution_grid(256), 512,
                             resolution_probes(), opts.corrupt_stencil);
  }
  out.push_back(check_a4(opts, certified));
  return out;
}

VerifyReport run_all(const VerifyOptions& opts) {
  VerifyReport rep;
  rep.env["series_terms_identity"] = std::to_string(kSeriesTermsDeep);
  rep.env["series_tol"] = fmt(kSeriesTol);
  rep.env["seed"] = std::to_string(kSeed);
  {
    std::ostringstream os;
    const GridSpec rg = resolution_grid(256);
    os << "[" << rg.x_min << ", " << rg.x_max << "], n in {256,512}, "
          "n_steps = 2n";
    rep.env["resolver_grid"] = os.str();
  }
  {
    std::ostringstream os;
    for (const auto& p : resolution_probes()) {
      os << "(" << p.center << ", " << p.sigma << ") ";
    }
    rep.env["resolver_probes"] = os.str();
  }
  if (opts.corrupt_stencil) rep.env["negative_control"] = "corrupt_stencil";
  if (opts.mismatch_mass_generator) {
    rep.env["negative_control"] = "mismatch_mass_generator";
  }
  if (opts.force_sign) {
    rep.env["forced_sign"] = to_string(opts.forced_sign);
  }

  for (CheckResult& c : run_identity_suite(opts)) {
    rep.checks.push_back(std::move(c));
  }

  ResolutionOutcome certified;
  bool have_certified = false;
  if (wants(opts, "A5")) {
    rep.checks.push_back(check_a5(opts, certified));
    have_certified = true;
  }
  if (wants(opts, "A4")) {
    if (!have_certified && !opts.force_sign) {
      certified = resolve_impl(resolution_config(), resolution_grid(256), 512,
                               resolution_probes(), opts.corrupt_stencil);
      have_certified = true;
    }
    rep.checks.push_back(check_a4(opts, certified));
  }
  if (have_certified) {
    // Always report the resolver's honest answer; a forced sign only changes
    // which pair the downstream checks consume (recorded in env).
    rep.resolved_sign = certified.sign;
    rep.resolved_convention = certified.convention;
    rep.resolution_status = certified.status;
  } else if (opts.force_sign) {
    rep.resolved_sign = opts.forced_sign;
    rep.resolved_convention = CorrectionConvention::kStandard;
    rep.resolution_status = ResolutionStatus::kAmbiguous;
  }

  if (wants(opts, "A6")) rep.checks.push_back(check_a6());
  if (wants(opts, "A7")) rep.checks.push_back(check_a7(rep.env));
  if (wants(opts, "A8")) rep.checks.push_back(check_a8());

  // Keep the report in criterion order regardless of assembly order.
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.name < b.name;
            });
  return rep;
}

}  // namespace pdm
