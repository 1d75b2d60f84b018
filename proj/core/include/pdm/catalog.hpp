#pragma once

#include <string>
#include <vector>

#include "pdm/grid.hpp"
#include "pdm/scalar_field.hpp"

namespace pdm {

// Which sign the e^{+beta x} coefficient of the five-term potential carries:
// a3 = s * alpha*beta^3/4 with s = +1 (kPlus) or s = -1 (kMinus).  The two
// choices are both constructible so the verify suite can certify the one that
// actually produces a pure Morse well after the transformation.
enum class SignChoice { kPlus, kMinus };

inline double sign_value(SignChoice s) {
  return s == SignChoice::kPlus ? 1.0 : -1.0;
}
std::string to_string(SignChoice s);

// Morse well  W(x) = D_e (1 - e^{-beta (x - gamma)})^2.
struct MorseParams {
  double D_e;    // well depth
  double beta;   // range parameter
  double gamma;  // equilibrium position

  MorseParams(double D_e_, double beta_, double gamma_);
};

// Parameter set of the worked exponential-mass example:
//   m(x)  = (1 + alpha*beta*e^{beta x})^{-2}
//   g(x)  = alpha*e^{beta x}
//   V(x)  = a0 + a1 e^{-beta x} + a2 e^{-2 beta x} + a3 e^{beta x}
//           + a4 e^{2 beta x}
// with the coefficient constraints a2 = a1^2/(4 a0), a3 = s*alpha*beta^3/4,
// a4 = -(3/8) alpha^2 beta^4 baked in.
struct ExampleConfig {
  double alpha;
  double beta;
  double a0;
  double a1;
  SignChoice sign = SignChoice::kMinus;

  ExampleConfig(double alpha_, double beta_, double a0_, double a1_,
                SignChoice sign_ = SignChoice::kMinus);

  double a2() const { return a1 * a1 / (4.0 * a0); }
  double a3() const { return sign_value(sign) * alpha * beta * beta * beta / 4.0; }
  double a4() const {
    return -0.375 * alpha * alpha * beta * beta * beta * beta;
  }
  // Singular point of the forward displacement: the admissible domain of the
  // transformation is x < x_star.
  double x_star() const;

  ExampleConfig with_sign(SignChoice s) const;
};

// m(x) = (1 + alpha*beta*e^{beta x})^{-2}; analytic to all orders.
ScalarField mass_family(double alpha, double beta);

// Generator matched to mass_family: g(x) = alpha*e^{beta x}.
ScalarField generator_for_mass(double alpha, double beta);

// Five-term potential with the coefficient constraints of ExampleConfig.
ScalarField potential_family(const ExampleConfig& cfg);

// Well parameters implied by a config:
//   D_e = (2 a0 - alpha*beta*a1)^2 / (4 a0)
//   gamma = (1/beta) ln( a1 / (alpha*beta*a1 - 2 a0) )
// Throws GammaUndefined when the log argument is nonpositive.
MorseParams morse_from_config(const ExampleConfig& cfg);

ScalarField morse_potential(const MorseParams& p);

// Closed forms of the transformation's auxiliary functions for the
// exponential generator:
//   f(x) = -(1/beta) ln(1 - alpha*beta*e^{beta x})   on x < x_star
//   G(x) = 1 + alpha*beta*e^{beta x}
ScalarField f_closed(double alpha, double beta);
ScalarField G_closed(double alpha, double beta);
// Closed form of the alternating displacement:
//   F(x) = -(1/beta) ln(1 + alpha*beta*e^{beta x})   (entire line)
ScalarField F_closed(double alpha, double beta);

// g(x) = c*x: the generator of pure position/momentum rescaling.
ScalarField linear_generator(double c);

// The linear generator that removes a *constant* mass m0 from the kinetic
// term under the adjoint-on-the-left conjugation used throughout this
// library (H -> T^dagger H T): g(x) = -(ln m0 / 2) x.  With this choice the
// momentum-weight series sums to 1/sqrt(m0) and the mass-consistency
// identity G^2 m = 1 holds.
ScalarField mass_eliminating_generator(double m0);

// V(x) = coeff * x^2 with exact derivatives at any order; the harmonic
// baseline potential used by the constant-mass checks and the CLI.
ScalarField quadratic_field(double coeff);

// Textbook Morse bound-state energy:
//   E_n = beta sqrt(2 D_e) (n + 1/2) - beta^2 (n + 1/2)^2 / 2.
// Used as a cross-check oracle only; the library's spectra come from the
// eigensolver.
double morse_level(const MorseParams& p, int n);
// Number of bound levels E_0 < E_1 < ... strictly below D_e.
int morse_level_count(const MorseParams& p);

// ---- named configurations -------------------------------------------------

// Deep Morse well used by the end-to-end acceptance pipeline
// (alpha=0.1, beta=0.5, a0=1, a1=400; D_e=81).  Note: for every config with
// a1 > 0 the well equilibrium gamma lies *above* the admissible-domain edge
// x_star, so the mass-side problem truncated below x_star has no bound
// states below D_e; see the verify suite for the honest outcome.
ExampleConfig acceptance_config();

// Valid-regime counterpart (a1 < 0 puts gamma below x_star): a genuinely
// comparable bound-state problem used to demonstrate spectral equivalence
// (alpha=0.1, beta=0.25, a0=50, a1=-200; D_e=55.125, ~41 bound levels).
ExampleConfig deep_well_config();

// Configuration tuned so the conjugation oracle separates the four
// (a3 sign, correction convention) candidates as sharply as possible at
// n in {256, 512}.
ExampleConfig resolution_config();

struct GaussianProbeSpec {
  double center;
  double sigma;
};

// The five fixed probe states used by the resolver (deterministic; these
// constants are part of the verification protocol).
std::vector<GaussianProbeSpec> resolution_probes();

// Grid on which the resolver operates, for a given interior node count.
GridSpec resolution_grid(int n);

// ---- figure data ------------------------------------------------------------

struct FigureData {
  std::vector<double> x;                       // plot abscissas
  std::vector<double> betas;                   // parameter set
  std::vector<std::vector<double>> mass;       // mass[j][i] = m_{beta_j}(x_i)
  std::vector<std::vector<double>> potential;  // same layout for V
};

// Standard plot data: alpha=1, beta in {1/2, 1, 2}, a0=a1=1, sign kPlus,
// inclusive abscissas -6..4 (501 samples, so x=0 is hit exactly).
FigureData make_figure_data();

}  // namespace pdm
