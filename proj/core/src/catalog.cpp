#include "pdm/catalog.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/jet.hpp"

namespace pdm {

std::string to_string(SignChoice s) {
  return s == SignChoice::kPlus ? "plus" : "minus";
}

MorseParams::MorseParams(double D_e_, double beta_, double gamma_)
    : D_e(D_e_), beta(beta_), gamma(gamma_) {
  if (!(D_e > 0.0)) {
    std::ostringstream os;
    os << "Morse well depth must be positive, got D_e = " << D_e;
    throw ParamError(os.str());
  }
  if (!(beta > 0.0)) {
    std::ostringstream os;
    os << "Morse range parameter must be positive, got beta = " << beta;
    throw ParamError(os.str());
  }
}

ExampleConfig::ExampleConfig(double alpha_, double beta_, double a0_,
                             double a1_, SignChoice sign_)
    : alpha(alpha_), beta(beta_), a0(a0_), a1(a1_), sign(sign_) {
  if (!(alpha > 0.0)) {
    throw ParamError("ExampleConfig: alpha must be positive");
  }
  if (!(beta > 0.0)) {
    throw ParamError("ExampleConfig: beta must be positive");
  }
  if (a0 == 0.0) {
    throw ParamError("ExampleConfig: a0 must be nonzero (a2 = a1^2/(4 a0))");
  }
}

double ExampleConfig::x_star() const { return -std::log(alpha * beta) / beta; }

ExampleConfig ExampleConfig::with_sign(SignChoice s) const {
  return ExampleConfig(alpha, beta, a0, a1, s);
}

ScalarField mass_family(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ParamError("mass_family: alpha and beta must be positive");
  }
  auto fn = [alpha, beta](double x0, int order) {
    Jet q = ScalarField::exponential(alpha * beta, beta).jet(x0, order);
    Jet r = Jet::reciprocal(Jet::constant(1.0, order) + q);
    return r * r;
  };
  std::ostringstream label;
  label << "m(x) = (1 + " << alpha * beta << "*exp(" << beta << " x))^-2";
  return ScalarField::from_jet_function(fn, Interval::whole_line(),
                                        ScalarField::kUnlimitedOrder,
                                        label.str());
}

ScalarField generator_for_mass(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ParamError("generator_for_mass: alpha and beta must be positive");
  }
  return ScalarField::exponential(alpha, beta);
}

ScalarField potential_family(const ExampleConfig& cfg) {
  ScalarField v = ScalarField::constant(cfg.a0) +
                  ScalarField::exponential(cfg.a1, -cfg.beta) +
                  ScalarField::exponential(cfg.a2(), -2.0 * cfg.beta) +
                  ScalarField::exponential(cfg.a3(), cfg.beta) +
                  ScalarField::exponential(cfg.a4(), 2.0 * cfg.beta);
  return v.with_label("five-term exponential potential");
}

MorseParams morse_from_config(const ExampleConfig& cfg) {
  const double ab = cfg.alpha * cfg.beta;
  const double denom = ab * cfg.a1 - 2.0 * cfg.a0;
  double arg = (denom == 0.0) ? 0.0 : cfg.a1 / denom;
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "equilibrium position undefined: a1/(alpha*beta*a1 - 2 a0) = " << arg
       << " is not positive (a1 = " << cfg.a1 << ", denom = " << denom << ")";
    throw GammaUndefined(os.str());
  }
  const double gamma = std::log(arg) / cfg.beta;
  const double num = 2.0 * cfg.a0 - ab * cfg.a1;
  const double depth = num * num / (4.0 * cfg.a0);
  return MorseParams(depth, cfg.beta, gamma);
}

ScalarField morse_potential(const MorseParams& p) {
  const double depth = p.D_e;
  const double beta = p.beta;
  const double gamma = p.gamma;
  auto fn = [depth, beta, gamma](double x0, int order) {
    // u = exp(-beta (x - gamma)) expanded at x0.
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    c[0] = std::exp(-beta * (x0 - gamma));
    for (int k = 1; k <= order; ++k) {
      c[static_cast<std::size_t>(k)] =
          c[static_cast<std::size_t>(k - 1)] * (-beta) / k;
    }
    Jet t = Jet::constant(1.0, order) - Jet(std::move(c));
    return depth * (t * t);
  };
  std::ostringstream label;
  label << "Morse(D_e=" << depth << ", beta=" << beta << ", gamma=" << gamma
        << ")";
  return ScalarField::from_jet_function(fn, Interval::whole_line(),
                                        ScalarField::kUnlimitedOrder,
                                        label.str());
}

ScalarField f_closed(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ParamError("f_closed: alpha and beta must be positive");
  }
  const double xs = -std::log(alpha * beta) / beta;
  auto fn = [alpha, beta](double x0, int order) {
    Jet q = ScalarField::exponential(alpha * beta, beta).jet(x0, order);
    Jet arg = Jet::constant(1.0, order) - q;  // positive for x0 < x_star
    return (-1.0 / beta) * Jet::log(arg);
  };
  return ScalarField::from_jet_function(fn, Interval::below(xs),
                                        ScalarField::kUnlimitedOrder,
                                        "f(x) = -log(1 - alpha*beta*exp(beta x))/beta");
}

ScalarField G_closed(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ParamError("G_closed: alpha and beta must be positive");
  }
  ScalarField g = ScalarField::constant(1.0) +
                  ScalarField::exponential(alpha * beta, beta);
  return g.with_label("G(x) = 1 + alpha*beta*exp(beta x)");
}

ScalarField F_closed(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ParamError("F_closed: alpha and beta must be positive");
  }
  auto fn = [alpha, beta](double x0, int order) {
    Jet q = ScalarField::exponential(alpha * beta, beta).jet(x0, order);
    Jet arg = Jet::constant(1.0, order) + q;  // positive everywhere
    return (-1.0 / beta) * Jet::log(arg);
  };
  return ScalarField::from_jet_function(fn, Interval::whole_line(),
                                        ScalarField::kUnlimitedOrder,
                                        "F(x) = -log(1 + alpha*beta*exp(beta x))/beta");
}

ScalarField linear_generator(double c) {
  auto fn = [c](double x0, int order) {
    Jet x = Jet::variable(x0, order);
    return c * x;
  };
  std::ostringstream label;
  label << "g(x) = " << c << " x";
  return ScalarField::from_jet_function(fn, Interval::whole_line(),
                                        ScalarField::kUnlimitedOrder,
                                        label.str());
}

ScalarField mass_eliminating_generator(double m0) {
  if (!(m0 > 0.0)) {
    throw ParamError("mass_eliminating_generator: m0 must be positive");
  }
  return linear_generator(-0.5 * std::log(m0));
}

ScalarField quadratic_field(double coeff) {
  auto fn = [coeff](double x0, int order) {
    Jet x = Jet::variable(x0, order);
    return coeff * (x * x);
  };
  std::ostringstream label;
  label << "V(x) = " << coeff << " x^2";
  return ScalarField::from_jet_function(fn, Interval::whole_line(),
                                        ScalarField::kUnlimitedOrder,
                                        label.str());
}

double morse_level(const MorseParams& p, int n) {
  const double half = n + 0.5;
  return p.beta * std::sqrt(2.0 * p.D_e) * half -
         0.5 * p.beta * p.beta * half * half;
}

int morse_level_count(const MorseParams& p) {
  // The level formula corresponds to a genuine bound state only while it is
  // increasing in n, i.e. for n + 1/2 < sqrt(2 D_e)/beta; past the vertex of
  // the parabola the formula keeps producing values below D_e that are not
  // eigenvalues, so the count is read off the vertex position directly.
  const double turnover = std::sqrt(2.0 * p.D_e) / p.beta - 0.5;
  if (!(turnover > 0.0)) return 0;
  return static_cast<int>(std::ceil(turnover));
}

ExampleConfig acceptance_config() {
  return ExampleConfig(0.1, 0.5, 1.0, 400.0, SignChoice::kMinus);
}

ExampleConfig deep_well_config() {
  return ExampleConfig(0.1, 0.25, 50.0, -200.0, SignChoice::kMinus);
}

ExampleConfig resolution_config() {
  // Chosen (see the resolver notes in the verify suite) so that the
  // candidate-separating terms, which scale like beta^2 q and beta^2 q^2 with
  // q = alpha*beta*e^{beta x}, are as large as probe placement allows while
  // the probes and their transformed images stay clear of the grid walls.
  //
  // Derivation from (beta, x_star, q_gamma, depth):
  //   alpha = exp(-beta*x_star)/beta
  //   a0    = depth (1 - q_gamma)^2       (depth = well depth of the target)
  //   a1    = -2 a0 q_gamma / ((1 - q_gamma) alpha beta)   (a1 < 0 keeps the
  //           equilibrium inside the admissible domain)
  //
  // Measured on the companion grid/probes at n in {256, 512}: the winner's
  // residual is 1.9e-4 / 4.7e-5 and the runner-up sits at 4.4e-3, a 23x /
  // 93x separation; the surrounding (sigma, span) neighborhood stays above
  // 12x, so the certification does not ride a knife edge.
  const double beta = 1.0;
  const double x_star = 2.0;
  const double q_gamma = 0.25;
  const double depth = 0.3;
  const double alpha = std::exp(-beta * x_star) / beta;
  const double a0 = depth * (1.0 - q_gamma) * (1.0 - q_gamma);
  const double a1 = -2.0 * a0 * q_gamma / ((1.0 - q_gamma) * alpha * beta);
  return ExampleConfig(alpha, beta, a0, a1, SignChoice::kMinus);
}

std::vector<GaussianProbeSpec> resolution_probes() {
  // Two probes pushed as far toward the admissible edge as the wall guard
  // allows (support radius 5.26 sigma, 10-node margin, image displacement):
  // the rightmost one sees the largest q and dominates the separation.
  return {
      {-0.90, 0.38},
      {-1.30, 0.38},
  };
}

GridSpec resolution_grid(int n) { return GridSpec(-3.7, 1.9, n); }

FigureData make_figure_data() {
  FigureData data;
  data.betas = {0.5, 1.0, 2.0};
  const int samples = 501;  // inclusive endpoints, step 0.02, hits x = 0
  const double lo = -6.0, hi = 4.0;
  data.x.resize(samples);
  for (int i = 0; i < samples; ++i) {
    data.x[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
  }
  for (double beta : data.betas) {
    ScalarField m = mass_family(1.0, beta);
    ExampleConfig cfg(1.0, beta, 1.0, 1.0, SignChoice::kPlus);
    ScalarField v = potential_family(cfg);
    std::vector<double> mrow, vrow;
    mrow.reserve(data.x.size());
    vrow.reserve(data.x.size());
    for (double x : data.x) {
      mrow.push_back(m(x));
      vrow.push_back(v(x));
    }
    data.mass.push_back(std::move(mrow));
    data.potential.push_back(std::move(vrow));
  }
  return data;
}

}  // namespace pdm
