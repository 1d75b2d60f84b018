// pdm: command-line front end for the position-dependent-mass transform
// library.  Subcommands: transform, spectrum, verify, figures.
//
// Exit codes: 0 ok, 1 verification failure, 2 domain/parameter error,
// 3 I/O failure, 4 insufficient bound states, 5 ambiguous resolution.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdm/catalog.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/errors.hpp"
#include "pdm/operators.hpp"
#include "pdm/transform.hpp"
#include "pdm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoBoundStates = 4;
constexpr int kExitAmbiguous = 5;

struct Options {
  // Example-family parameters; defaults are the acceptance configuration.
  double alpha = 0.1;
  double beta = 0.5;
  double a0 = 1.0;
  double a1 = 400.0;
  std::string a3_sign = "auto";

  // Grid parameters; NaN / 0 means "per-command default".
  double xmin = std::numeric_limits<double>::quiet_NaN();
  double xmax = std::numeric_limits<double>::quiet_NaN();
  int n = 0;

  int k_levels = 4;
  int K_terms = 128;
  double tol = 1e-10;

  std::string out_dir;  // empty: write data to stdout
  std::string format = "csv";

  // 0 disables; > 0 switches the transform/spectrum commands to the
  // constant-mass baseline with that m0 (harmonic test potential).
  double constant_mass = 0.0;

  // Hidden negative-control switches for the verify subcommand.
  bool debug_corrupt_stencil = false;
  bool debug_mismatch_pair = false;

  bool xmin_set = false, xmax_set = false, n_set = false;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Opens `name` inside the output directory, or returns null to mean stdout.
std::unique_ptr<std::ofstream> open_output(const Options& opt,
                                           const std::string& name,
                                           std::string& path_out) {
  if (opt.out_dir.empty()) return nullptr;
  std::filesystem::create_directories(opt.out_dir);
  path_out = (std::filesystem::path(opt.out_dir) / name).string();
  auto f = std::make_unique<std::ofstream>(path_out);
  if (!*f) throw std::ios_base::failure("cannot open " + path_out);
  return f;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(const Table& t, std::ostream& os, const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) j["rows"].push_back(row);
    os << j.dump(2) << "\n";
    return;
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ",";
    os << t.columns[c];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      os << num(row[c]);
    }
    os << "\n";
  }
}

int emit_table(const Options& opt, const std::string& filename,
               const Table& t) {
  std::string path;
  auto file = open_output(opt, filename, path);
  std::ostream& os = file ? *file : std::cout;
  write_table(t, os, opt.format);
  os.flush();
  if (file && !*file) {
    std::cerr << "error: failed writing " << path << "\n";
    return kExitIo;
  }
  if (file) std::cerr << "wrote " << path << "\n";
  return kExitOk;
}

// Resolves which a3 sign / correction convention downstream commands use.
// "auto" runs the certification protocol and requires an unambiguous winner.
std::pair<pdm::SignChoice, pdm::CorrectionConvention> pick_sign(
    const Options& opt) {
  if (opt.a3_sign == "plus") {
    return {pdm::SignChoice::kPlus, pdm::CorrectionConvention::kStandard};
  }
  if (opt.a3_sign == "minus") {
    return {pdm::SignChoice::kMinus, pdm::CorrectionConvention::kStandard};
  }
  const pdm::ResolutionOutcome out = pdm::resolve_sign_and_convention(
      pdm::resolution_config(), pdm::resolution_grid(256), 512,
      pdm::resolution_probes());
  pdm::require_resolved(out);
  std::cerr << "resolver certified a3 sign " << pdm::to_string(out.sign)
            << ", convention " << pdm::to_string(out.convention)
            << " (winner residual " << num(out.winner_residual) << ", margin "
            << num(out.margin) << "x)\n";
  return {out.sign, out.convention};
}

pdm::GridSpec grid_or_default(const Options& opt, double lo, double hi,
                              int n_default) {
  const double a = opt.xmin_set ? opt.xmin : lo;
  const double b = opt.xmax_set ? opt.xmax : hi;
  const int n = opt.n_set ? opt.n : n_default;
  return pdm::GridSpec(a, b, n);
}

// ---- transform ---------------------------------------------------------------

int cmd_transform(const Options& opt) {
  using pdm::ScalarField;
  Table t;
  t.columns = {"x",          "m",        "g",        "G_series",
               "G_closed",   "f_series", "f_closed", "V",
               "V_tilde",    "W",        "W_morse_target"};

  ScalarField m = pdm::ScalarField::constant(1.0);
  ScalarField g = m, g_closed_big = m, f_cl = m, v = m;
  std::optional<ScalarField> morse_target;
  pdm::CorrectionConvention conv = pdm::CorrectionConvention::kStandard;
  pdm::GridSpec grid(0.0, 1.0, 3);  // placeholder; both branches overwrite it

  if (opt.constant_mass > 0.0) {
    const double m0 = opt.constant_mass;
    m = ScalarField::constant(m0);
    g = pdm::mass_eliminating_generator(m0);
    g_closed_big = ScalarField::constant(1.0 / std::sqrt(m0));
    // x + f = x / sqrt(m0): the squeeze that absorbs the constant mass.
    f_cl = (1.0 / std::sqrt(m0) - 1.0) * ScalarField::coordinate();
    v = pdm::quadratic_field(0.5);
    grid = grid_or_default(opt, -6.0, 6.0, 200);
  } else {
    auto [sign, c] = pick_sign(opt);
    conv = c;
    const pdm::ExampleConfig cfg(opt.alpha, opt.beta, opt.a0, opt.a1, sign);
    m = pdm::mass_family(cfg.alpha, cfg.beta);
    g = pdm::generator_for_mass(cfg.alpha, cfg.beta);
    g_closed_big = pdm::G_closed(cfg.alpha, cfg.beta);
    f_cl = pdm::f_closed(cfg.alpha, cfg.beta);
    v = pdm::potential_family(cfg);
    try {
      morse_target = pdm::morse_potential(pdm::morse_from_config(cfg));
    } catch (const pdm::GammaUndefined& e) {
      std::cerr << "note: " << e.what()
                << "; W_morse_target column will be nan\n";
    }
    grid = grid_or_default(opt, -6.0, cfg.x_star() - 0.5, 200);
  }

  const pdm::TransformedPotential tp =
      pdm::transformed_potential(v, g, opt.K_terms, opt.tol, conv);

  // Cells whose defining series or closed form is undefined at a node (past
  // the admissible edge, or at a zero of the generator where the weight
  // series is undefined as stated) are emitted as nan; the row itself stays,
  // since the mass-side columns remain meaningful everywhere.
  auto cell = [](const ScalarField& field, double x) {
    try {
      return field(x);
    } catch (const pdm::Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    if (!g.domain().contains(x)) continue;
    t.rows.push_back(
        {x, m(x), g(x), cell(tp.G, x), cell(g_closed_big, x), cell(tp.f, x),
         cell(f_cl, x), v(x), cell(tp.v_tilde, x), cell(tp.W, x),
         morse_target ? cell(*morse_target, x)
                      : std::numeric_limits<double>::quiet_NaN()});
  }
  return emit_table(opt, "transform.csv", t);
}

// ---- spectrum ------------------------------------------------------------------

int cmd_spectrum(const Options& opt) {
  Table t;
  t.columns = {"level", "E_pdm", "E_transformed", "abs_diff", "rel_diff"};
  const int k = opt.k_levels;
  if (k == 0) {
    std::cout << "requested 0 levels: nothing to compare\n";
    return emit_table(opt, "spectrum.csv", t);
  }
  if (k < 0) throw pdm::ParamError("spectrum: --k-levels must be >= 0");

  std::vector<double> e_a, e_b;
  std::string label_a, label_b;
  if (opt.constant_mass > 0.0) {
    const double m0 = opt.constant_mass;
    const pdm::GridSpec grid = grid_or_default(opt, -12.0, 12.0, 2000);
    const pdm::TridiagonalOperator ha =
        pdm::hamiltonian_constant(pdm::quadratic_field(0.5), grid, m0);
    const pdm::TridiagonalOperator hb = pdm::hamiltonian_constant(
        pdm::quadratic_field(0.5 / m0), grid, 1.0);
    e_a = pdm::lowest_eigenvalues(ha, k);
    e_b = pdm::lowest_eigenvalues(hb, k);
    label_a = "constant-mass harmonic";
    label_b = "rescaled unit-mass harmonic";
  } else {
    auto [sign, conv] = pick_sign(opt);
    (void)conv;
    const pdm::ExampleConfig cfg(opt.alpha, opt.beta, opt.a0, opt.a1, sign);
    const pdm::MorseParams mp = pdm::morse_from_config(cfg);
    const pdm::GridSpec pdm_grid =
        grid_or_default(opt, -6.0, cfg.x_star() - 0.5, 2000);
    const pdm::TridiagonalOperator h_pdm = pdm::hamiltonian_bdd(
        pdm::mass_family(cfg.alpha, cfg.beta), pdm::potential_family(cfg),
        pdm_grid);
    const int found = pdm::sturm_count(h_pdm, mp.D_e);
    if (found < k) {
      std::ostringstream os;
      os << "only " << found << " bound state(s) below D_e = " << num(mp.D_e)
         << " on the admissible domain (requested " << k << ")";
      throw pdm::InsufficientBoundStates(os.str(), found, k);
    }
    const pdm::GridSpec morse_grid(mp.gamma - 8.0, mp.gamma + 22.0, 2000);
    const pdm::TridiagonalOperator h_morse = pdm::hamiltonian_constant(
        pdm::morse_potential(mp), morse_grid);
    e_a = pdm::lowest_eigenvalues(h_pdm, k);
    e_b = pdm::lowest_eigenvalues(h_morse, k);
    label_a = "position-dependent mass";
    label_b = "transformed constant mass";
  }

  double max_rel = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double ad = std::abs(e_a[s] - e_b[s]);
    const double rd =
        ad / std::max({std::abs(e_a[s]), std::abs(e_b[s]), 1e-30});
    max_rel = std::max(max_rel, rd);
    t.rows.push_back({static_cast<double>(i), e_a[s], e_b[s], ad, rd});
  }
  const int rc = emit_table(opt, "spectrum.csv", t);
  if (rc != kExitOk) return rc;
  std::cout << "levels compared: " << k << " (" << label_a << " vs " << label_b
            << ")\n";
  for (const auto& row : t.rows) {
    std::cout << "  level " << static_cast<int>(row[0]) << ": " << num(row[1])
              << " vs " << num(row[2]) << " (rel diff " << num(row[4])
              << ")\n";
  }
  std::cout << "max rel diff: " << num(max_rel) << "\n";
  return kExitOk;
}

// ---- verify --------------------------------------------------------------------

int cmd_verify(const Options& opt) {
  pdm::VerifyOptions vo;
  vo.corrupt_stencil = opt.debug_corrupt_stencil;
  vo.mismatch_mass_generator = opt.debug_mismatch_pair;
  if (opt.a3_sign == "plus") {
    vo.force_sign = true;
    vo.forced_sign = pdm::SignChoice::kPlus;
  } else if (opt.a3_sign == "minus") {
    vo.force_sign = true;
    vo.forced_sign = pdm::SignChoice::kMinus;
  }

  const pdm::VerifyReport report = pdm::run_all(vo);

  if (opt.format == "json") {
    std::cout << report.to_json() << "\n";
  } else {
    for (const auto& c : report.checks) {
      std::ostringstream line;
      line << "[" << (c.status == pdm::CheckStatus::kPass
                          ? "PASS"
                          : c.status == pdm::CheckStatus::kFail ? "FAIL"
                                                                : "SKIP")
           << "] " << c.name << "  worst residual/threshold = "
           << num(c.residual) << "  (" << num(c.seconds) << " s)\n"
           << "       " << c.detail << "\n";
      std::cout << line.str();
    }
    std::cout << "resolved: a3 sign " << pdm::to_string(report.resolved_sign)
              << ", convention "
              << pdm::to_string(report.resolved_convention) << " ("
              << pdm::to_string(report.resolution_status) << ")\n";
  }

  if (!opt.out_dir.empty()) {
    std::string path;
    auto file = open_output(opt, "report.json", path);
    *file << report.to_json() << "\n";
    file->flush();
    if (!*file) {
      std::cerr << "error: failed writing " << path << "\n";
      return kExitIo;
    }
    std::cerr << "wrote " << path << "\n";
  }

  if (opt.a3_sign == "auto" &&
      report.resolution_status == pdm::ResolutionStatus::kAmbiguous) {
    return kExitAmbiguous;
  }
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

// ---- figures --------------------------------------------------------------------

int cmd_figures(const Options& opt) {
  const pdm::FigureData fd = pdm::make_figure_data();
  Options local = opt;
  if (local.out_dir.empty()) local.out_dir = ".";

  auto build = [&fd](const std::vector<std::vector<double>>& cols,
                     const std::string& prefix) {
    Table t;
    t.columns.push_back("x");
    for (double beta : fd.betas) {
      std::ostringstream name;
      name << prefix << "_beta" << beta;
      t.columns.push_back(name.str());
    }
    for (std::size_t i = 0; i < fd.x.size(); ++i) {
      std::vector<double> row{fd.x[i]};
      for (const auto& col : cols) row.push_back(col[i]);
      t.rows.push_back(std::move(row));
    }
    return t;
  };

  int rc = emit_table(local, "fig1.csv", build(fd.mass, "m"));
  if (rc != kExitOk) return rc;
  return emit_table(local, "fig2.csv", build(fd.potential, "V"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pdm: remove a position-dependent mass from a 1D Schrodinger "
      "Hamiltonian by a norm-preserving similarity transformation, and "
      "verify the construction numerically.\n\n"
      "A config file (--config FILE) uses flat key=value lines with the "
      "long option names, e.g.\n"
      "    alpha=0.1\n"
      "    a3-sign=minus\n"
      "Flags given on the command line override file values; file values "
      "override defaults."};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file");

  Options opt;
  app.add_option("--alpha", opt.alpha, "mass-family amplitude (> 0)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--beta", opt.beta, "mass-family range parameter (> 0)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--a0", opt.a0, "potential constant term (> 0)")
      ->capture_default_str();
  app.add_option("--a1", opt.a1, "potential e^{-beta x} coefficient")
      ->capture_default_str();
  app.add_option("--a3-sign", opt.a3_sign,
                 "sign of the cubic correction coefficient; auto runs the "
                 "resolver")
      ->check(CLI::IsMember({"plus", "minus", "auto"}))
      ->capture_default_str();
  auto* xmin_opt = app.add_option("--xmin", opt.xmin, "grid lower wall");
  auto* xmax_opt = app.add_option("--xmax", opt.xmax, "grid upper wall");
  auto* n_opt = app.add_option("--n", opt.n, "number of interior grid nodes")
                    ->check(CLI::PositiveNumber);
  app.add_option("--k-levels", opt.k_levels,
                 "number of bound levels to compare")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--K-terms", opt.K_terms, "series truncation depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "series evaluation tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", opt.out_dir,
                 "output directory (data goes to stdout when omitted)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--constant-mass", opt.constant_mass,
                 "use a constant mass m0 with the harmonic test potential "
                 "instead of the exponential mass family")
      ->check(CLI::PositiveNumber);
  app.add_flag("--debug-corrupt-stencil", opt.debug_corrupt_stencil,
               "negative control: misalign the kinetic stencil")
      ->group("");
  app.add_flag("--debug-mismatch-pair", opt.debug_mismatch_pair,
               "negative control: pair the mass with a wrong generator")
      ->group("");

  auto* sub_transform = app.add_subcommand(
      "transform", "tabulate the mass, generator, series and closed-form "
                   "displacements, and the transformed potential");
  auto* sub_spectrum = app.add_subcommand(
      "spectrum", "compare bound levels of the mass-side and transformed "
                  "Hamiltonians");
  auto* sub_verify = app.add_subcommand(
      "verify", "run the full validation suite and emit a report");
  auto* sub_figures = app.add_subcommand(
      "figures", "export the mass/potential family plot data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitDomain;
  }

  opt.xmin_set = xmin_opt->count() > 0;
  opt.xmax_set = xmax_opt->count() > 0;
  opt.n_set = n_opt->count() > 0;

  try {
    if (sub_transform->parsed()) return cmd_transform(opt);
    if (sub_spectrum->parsed()) return cmd_spectrum(opt);
    if (sub_verify->parsed()) return cmd_verify(opt);
    if (sub_figures->parsed()) return cmd_figures(opt);
  } catch (const pdm::InsufficientBoundStates& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoBoundStates;
  } catch (const pdm::AmbiguousResolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const pdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}
