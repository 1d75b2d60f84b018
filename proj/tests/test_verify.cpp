// The validation orchestrator: resolver behavior, negative controls,
// determinism, and report shape.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"
#include "pdm/verify.hpp"

using namespace pdm;

TEST_CASE("resolver reports NotDiscriminating when corrections vanish") {
  // A nearly constant momentum weight (tiny amplitude) makes all four
  // candidate potentials numerically identical: no honest winner exists.
  const ExampleConfig cfg(1e-8, 0.5, 1.0, 1.0, SignChoice::kMinus);
  const ResolutionOutcome out =
      resolve_sign_and_convention(cfg, GridSpec(-8.0, 8.0, 128), 256);
  CHECK(out.status == ResolutionStatus::kNotDiscriminating);
  CHECK_THROWS_AS(require_resolved(out), AmbiguousResolution);
}

TEST_CASE("resolution protocol certifies the minus/standard pair") {
  for (int n : {256, 512}) {
    const ResolutionOutcome out = resolve_sign_and_convention(
        resolution_config(), resolution_grid(n), 2 * n, resolution_probes());
    CAPTURE(n);
    CAPTURE(out.winner_residual);
    CAPTURE(out.runner_up_residual);
    CAPTURE(out.margin);
    CHECK(out.sign == SignChoice::kMinus);
    CHECK(out.convention == CorrectionConvention::kStandard);
    CHECK(out.status == ResolutionStatus::kResolved);
    CHECK(out.winner_residual <= 1e-2);
    CHECK(out.margin >= 10.0);
    CHECK_NOTHROW(require_resolved(out));
    REQUIRE(out.residuals.size() == 4);
  }
}

TEST_CASE("published example config alone cannot certify the sign") {
  // On the published example configuration the e^{-2 beta x} wall towers
  // over the sign-carrying e^{beta x} term everywhere probes can reach
  // (their ratio is below 1e-7), so the two signs tie at the resolver's
  // discretization floor.  The honest outcome is a refusal to certify --
  // which is precisely why the dedicated resolution configuration exists.
  const ExampleConfig cfg = acceptance_config();
  const ResolutionOutcome out = resolve_sign_and_convention(
      cfg, GridSpec(-6.0, cfg.x_star() - 0.5, 256), 512);
  CAPTURE(out.winner_residual);
  CAPTURE(out.margin);
  CHECK(out.status != ResolutionStatus::kResolved);
  CHECK(out.margin < 10.0);
  // Both signs conjugate self-consistently: the tied floor is small.
  CHECK(out.winner_residual < 1e-2);
}

TEST_CASE("identity suite passes and the mismatch control fails loudly") {
  VerifyOptions opts;
  opts.only_check = "A2";
  const std::vector<CheckResult> good = run_identity_suite(opts);
  REQUIRE(good.size() == 1);
  CHECK(good[0].status == CheckStatus::kPass);

  opts.mismatch_mass_generator = true;
  const std::vector<CheckResult> bad = run_identity_suite(opts);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].status == CheckStatus::kFail);
  CHECK(bad[0].residual > 1.0);
}

TEST_CASE("corrupted stencil is detected by the spectral checks") {
  VerifyOptions opts;
  opts.corrupt_stencil = true;
  opts.only_check = "A4";
  const std::vector<CheckResult> res = run_spectral_suite(opts);
  REQUIRE(res.size() == 1);
  CHECK(res[0].status == CheckStatus::kFail);
}

TEST_CASE("full report: completeness, determinism, honest statuses") {
  // Static: doctest re-enters the test body once per subcase, and the full
  // pipeline is too expensive to rebuild seven times.
  static const VerifyReport rep = run_all();

  SUBCASE("every acceptance criterion appears exactly once") {
    std::multiset<std::string> names;
    for (const auto& c : rep.checks) names.insert(c.name);
    const std::multiset<std::string> expect = {"A1", "A2", "A3", "A4",
                                               "A5", "A6", "A7", "A8"};
    CHECK(names == expect);
  }

  SUBCASE("identity, resolution, unitarity, oracle, and figure checks pass") {
    for (const char* name : {"A1", "A2", "A3", "A5", "A6", "A7", "A8"}) {
      const CheckResult* c = rep.find(name);
      REQUIRE(c != nullptr);
      CAPTURE(name);
      CAPTURE(c->detail);
      CHECK(c->status == CheckStatus::kPass);
    }
  }

  SUBCASE("the published spectral comparison fails for a structural reason") {
    // The advertised config places the well equilibrium beyond the
    // admissible edge; the check reports that honestly instead of passing
    // a weakened criterion or silently skipping.
    const CheckResult* a4 = rep.find("A4");
    REQUIRE(a4 != nullptr);
    CHECK(a4->status == CheckStatus::kFail);
    CHECK(a4->detail.find("insufficient bound states") != std::string::npos);
    CHECK(a4->detail.find("exceeds the admissible edge") != std::string::npos);
    // The shape identity itself holds under the certified pair; only the
    // bound-state comparison is obstructed.
    const std::size_t shape = a4->detail.find("(i) sup|W - well target|");
    REQUIRE(shape != std::string::npos);
    const std::string shape_line =
        a4->detail.substr(shape, a4->detail.find(';', shape) - shape);
    CHECK(shape_line.find(" <= ") != std::string::npos);
    // The valid-regime demonstration inside A4 still carries the passing
    // sub-lines, so the failure is attributable to the config, not the
    // machinery.
    CHECK(a4->detail.find("(iv) valid-regime bound-level rel diff") !=
          std::string::npos);
    CHECK(rep.all_passed() == false);
  }

  SUBCASE("resolution metadata is recorded") {
    CHECK(rep.resolved_sign == SignChoice::kMinus);
    CHECK(rep.resolved_convention == CorrectionConvention::kStandard);
    CHECK(rep.resolution_status == ResolutionStatus::kResolved);
  }

  SUBCASE("report JSON is well-formed and complete") {
    const nlohmann::json j = nlohmann::json::parse(rep.to_json());
    REQUIRE(j.contains("checks"));
    CHECK(j["checks"].size() == 8);
    for (const auto& c : j["checks"]) {
      CHECK(c.contains("name"));
      CHECK(c.contains("status"));
      CHECK(c.contains("residual"));
      CHECK(c.contains("threshold"));
      CHECK(c.contains("seconds"));
    }
    CHECK(j["resolved"]["a3_sign"] == "minus");
    CHECK(j["resolved"]["convention"] == "standard");
    CHECK(j["env"].contains("seed"));
  }

  SUBCASE("two runs agree except for runtimes") {
    const VerifyReport rep2 = run_all();
    REQUIRE(rep2.checks.size() == rep.checks.size());
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
      CHECK(rep.checks[i].name == rep2.checks[i].name);
      CHECK(rep.checks[i].status == rep2.checks[i].status);
      CHECK(rep.checks[i].residual == rep2.checks[i].residual);
      CHECK(rep.checks[i].detail == rep2.checks[i].detail);
    }
  }
}

TEST_CASE("forcing the wrong sign fails the transformed-potential identity") {
  VerifyOptions opts;
  opts.force_sign = true;
  opts.forced_sign = SignChoice::kPlus;
  opts.only_check = "A4";
  const VerifyReport rep = run_all(opts);
  const CheckResult* a4 = rep.find("A4");
  REQUIRE(a4 != nullptr);
  CHECK(a4->status == CheckStatus::kFail);
  // Specifically the W-vs-target identity breaks, independent of the
  // bound-state obstruction.
  CHECK(a4->detail.find("(i) sup|W - well target|") != std::string::npos);
  CHECK(a4->residual > 1.0);
}

// Manually runnable protocol scan (doctest --no-skip to enable): prints the
// four candidate residuals for a family of grids/configs so the resolution
// protocol's margins can be re-tuned if the numeric floor ever moves.
TEST_CASE("resolution protocol margin scan" * doctest::skip()) {
  for (int n : {192, 256, 384, 512}) {
    const ResolutionOutcome out = resolve_sign_and_convention(
        resolution_config(), resolution_grid(n), 2 * n, resolution_probes());
    MESSAGE("n=", n, " winner=", to_string(out.sign), "/",
            to_string(out.convention), " residual=", out.winner_residual,
            " runner=", out.runner_up_residual, " margin=", out.margin);
  }
}
