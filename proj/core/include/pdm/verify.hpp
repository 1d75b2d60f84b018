#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/grid.hpp"
#include "pdm/transform.hpp"

namespace pdm {

enum class CheckStatus { kPass, kFail, kSkipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kFail;
  // Worst sub-residual divided by its threshold: <= 1 means the check
  // passed; the per-sub-check numbers live in `detail`.
  double residual = 0.0;
  double threshold = 1.0;
  double seconds = 0.0;
  std::string detail;
};

enum class ResolutionStatus {
  kResolved,           // unique winner below threshold, runner-up >= 10x worse
  kAmbiguous,          // separation exists but below the certification bar
  kNotDiscriminating,  // all four candidates tie (e.g. constant momentum
                       // weight: every correction term vanishes identically)
};
std::string to_string(ResolutionStatus s);

struct CandidateResidual {
  SignChoice sign = SignChoice::kMinus;
  CorrectionConvention convention = CorrectionConvention::kStandard;
  double residual = 0.0;
};

struct ResolutionOutcome {
  SignChoice sign = SignChoice::kMinus;
  CorrectionConvention convention = CorrectionConvention::kStandard;
  ResolutionStatus status = ResolutionStatus::kAmbiguous;
  std::vector<CandidateResidual> residuals;  // all four candidates, run order
  double winner_residual = 0.0;
  double runner_up_residual = 0.0;
  double margin = 0.0;  // runner_up / winner
};

// Runs the conjugation oracle for all four (a3 sign, correction convention)
// candidates of `cfg` on one grid and picks the winner.  Never throws on an
// unclear outcome; the status field reports it.  n_steps <= 0 selects the
// default 2 * grid.n.  The three-argument form derives probe placement from
// the grid; the four-argument form takes an explicit probe protocol (the
// certification runs use resolution_probes()).
ResolutionOutcome resolve_sign_and_convention(const ExampleConfig& cfg,
                                              const GridSpec& grid,
                                              int n_steps = 0);
ResolutionOutcome resolve_sign_and_convention(
    const ExampleConfig& cfg, const GridSpec& grid, int n_steps,
    const std::vector<GaussianProbeSpec>& probes);

// Throws AmbiguousResolution unless the outcome status is kResolved.
// (kNotDiscriminating also throws: the caller asked for a certified pair.)
void require_resolved(const ResolutionOutcome& outcome);

struct VerifyOptions {
  // Negative controls (reachable from the CLI via hidden --debug flags):
  // misalign every half-node mass sample by one full grid step,
  bool corrupt_stencil = false;
  // and pair the mass family with a wrong-amplitude generator.
  bool mismatch_mass_generator = false;
  // Skip the resolver and force the a3 sign (convention stays standard).
  bool force_sign = false;
  SignChoice forced_sign = SignChoice::kMinus;
  // Run a single named check ("A1".."A8"); empty runs all.
  std::string only_check;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  SignChoice resolved_sign = SignChoice::kMinus;
  CorrectionConvention resolved_convention = CorrectionConvention::kStandard;
  ResolutionStatus resolution_status = ResolutionStatus::kAmbiguous;
  std::map<std::string, std::string> env;

  bool all_passed() const;  // every non-skipped check passed
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

// Identity-layer checks: series vs closed forms (A1), momentum-weight /
// mass consistency (A2), and the constant-mass scaling baseline including
// its spectra (A3).
std::vector<CheckResult> run_identity_suite(const VerifyOptions& opts = {});

// Spectral end-to-end check (A4): transformed-potential identity, the
// bound-state comparison on the named deep-well configs, the textbook
// cross-check, and the discretization-order refinement ratio.
std::vector<CheckResult> run_spectral_suite(const VerifyOptions& opts = {});

// Full pipeline: A1..A8 exactly once each, resolver outcome, environment
// metadata.  Deterministic (fixed probes and seeds).
VerifyReport run_all(const VerifyOptions& opts = {});

}  // namespace pdm
