#include "procunc/harness.hpp"

#include "procunc/io.hpp"
#include "test_helpers.hpp"

using namespace procunc;
using namespace procunc::testing;

namespace {

CampaignConfig small_config() {
  CampaignConfig config;
  config.seed = 404;
  config.samples = 60;
  config.d_R = config.d_A = config.d_B = 2;
  return config;
}

}  // namespace

TEST_CASE("run_verification: clean small campaign") {
  Rng rng(91);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 3, rng);
  CampaignConfig config = small_config();
  CampaignReport rep = run_verification(config, t1, t2);

  CHECK(rep.passed());
  CHECK(rep.violations.empty());
  for (const PairSlackSummary& s : rep.mu) CHECK(s.min_slack >= -1e-7);
  CHECK(rep.uur_min.worst() >= -1e-8);
  CHECK(rep.tightness.max_abs_gap <= 1e-6);
  CHECK(std::abs(rep.bounds.s_cumulative.back() - 2.0) <= 1e-6);
}

TEST_CASE("run_verification: deterministic and thread-invariant") {
  Rng rng(92);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 2, rng);
  CampaignConfig config = small_config();
  config.samples = 30;

  CampaignReport a = run_verification(config, t1, t2);
  CampaignReport b = run_verification(config, t1, t2);
  config.threads = 4;
  CampaignReport c = run_verification(config, t1, t2);

  io::CampaignSpec spec;
  spec.config = config;
  std::string ja = io::dump(io::campaign_report_to_json(a, spec, 2.0));
  std::string jb = io::dump(io::campaign_report_to_json(b, spec, 2.0));
  std::string jc = io::dump(io::campaign_report_to_json(c, spec, 2.0));
  CHECK(ja == jb);
  CHECK(ja == jc);
}

TEST_CASE("run_verification: d_R = 1 and d_A = 1 degenerations stay clean") {
  Rng rng(93);
  Tester t1 = random_tester(1, 2, 2, 2, rng);
  Tester t2 = random_tester(1, 2, 2, 2, rng);
  CampaignConfig config = small_config();
  config.samples = 30;
  config.d_R = 1;
  CHECK(run_verification(config, t1, t2).passed());

  // state case: trivial probe side
  auto z = z_projectors();
  auto x = x_projectors();
  Tester tz = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  Tester tx = state_case_tester(Povm::make({x[0], x[1]}, SystemShape{2}));
  CampaignConfig sc = small_config();
  sc.samples = 30;
  sc.d_A = 1;
  CampaignReport rep = run_verification(sc, tz, tx);
  CHECK(rep.passed());
  CHECK(rep.mu_rhs == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tightness_probe: witness channels achieve every s_k") {
  Rng rng(94);
  for (int trial = 0; trial < 3; ++trial) {
    Tester t1 = random_tester(2, 2, 2, 2, rng);
    Tester t2 = random_tester(2, 2, 2, 2, rng);
    BoundVectors bounds = compute_bounds(t1, t2);
    TightnessReport rep = tightness_probe(t1, t2, bounds);
    CHECK(rep.max_abs_gap <= 1e-6);
    // full pool: any channel achieves total mass 2
    CHECK(std::abs(rep.gaps.back()) <= 1e-6);
  }
}

TEST_CASE("tightness_probe: requires retained optimizers") {
  Rng rng(95);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 2, rng);
  BoundVectors bounds = s_vector(make_effect_pool(t1, t2),
                                 SVectorOptions{16, false, 1});
  CHECK_THROWS_AS(tightness_probe(t1, t2, bounds), ValidationError);
}

TEST_CASE("conjecture_explore: flat overlap chain reduces to the Rényi bound") {
  // Z/X state case: all nonzero overlaps equal 1/√2, so every ratio term
  // vanishes and the rhs telescopes to -2 log₂ c₁ = 1 bit.
  auto z = z_projectors();
  auto x = x_projectors();
  Tester tz = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  Tester tx = state_case_tester(Povm::make({x[0], x[1]}, SystemShape{2}));
  CampaignConfig config = small_config();
  config.samples = 40;
  config.d_A = 1;
  ConjectureReport rep = conjecture_explore(tz, tx, config);
  CHECK_FALSE(rep.rhs_infinite);
  CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.min_lhs >= rep.rhs - 1e-7);
  CHECK_FALSE(rep.counterexample_candidate);
}

TEST_CASE("conjecture_explore: process testers emit a full report") {
  Rng rng(96);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 2, rng);
  CampaignConfig config = small_config();
  config.samples = 40;
  ConjectureReport rep = conjecture_explore(t1, t2, config);
  CHECK(rep.sorted_overlaps.size() == 9);
  for (size_t i = 1; i < rep.sorted_overlaps.size(); ++i) {
    CHECK(rep.sorted_overlaps[i] <= rep.sorted_overlaps[i - 1] + 1e-15);
  }
  CHECK(rep.argmin_sample >= 0);
  CHECK(std::isfinite(rep.min_lhs));
}

TEST_CASE("state_case_regression: dual-path agreement") {
  Rng rng(97);
  std::vector<DensityOperator> states;
  for (int i = 0; i < 20; ++i) states.push_back(random_density(2, rng));

  SUBCASE("MUB pair") {
    auto z = z_projectors();
    auto x = x_projectors();
    StateCaseReport rep = state_case_regression(
        Povm::make({z[0], z[1]}, SystemShape{2}),
        Povm::make({x[0], x[1]}, SystemShape{2}), states);
    CHECK(rep.ok());
    CHECK(rep.mu_bound == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("identical POVMs: overlap 1, bound 0") {
    auto z = z_projectors();
    Povm m = Povm::make({z[0], z[1]}, SystemShape{2});
    StateCaseReport rep = state_case_regression(m, m, states);
    CHECK(rep.ok());
    CHECK(rep.overlap == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(rep.mu_bound) <= 1e-9);
  }

  SUBCASE("random POVMs") {
    Povm m1 = random_povm(2, 3, rng);
    Povm m2 = random_povm(2, 2, rng);
    StateCaseReport rep = state_case_regression(m1, m2, states);
    CHECK(rep.max_prob_deviation <= 1e-9);
    CHECK(rep.overlap_deviation <= 1e-9);
    CHECK(rep.bound_deviation <= 1e-9);
    CHECK(rep.max_s_deviation <= 1e-7);
  }
}

TEST_CASE("H(p) + H(q) bounded by the Shannon value of the t-vector") {
  // direct-product form: H(p⊗q) = H(p) + H(q) ≥ H(t)
  Rng rng(98);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 2, rng);
  BoundVectors bounds = compute_bounds(t1, t2);
  double h_t = schur_concave_eval(Functional::Shannon, bounds.t);
  double h_flat_t = schur_concave_eval(Functional::Shannon, bounds.t_flat);
  for (int trial = 0; trial < 50; ++trial) {
    QuantumChannel ch = random_cptp(2, 2, 4, rng);
    double lhs = shannon_entropy(probabilities(t1, ch).entries) +
                 shannon_entropy(probabilities(t2, ch).entries);
    CHECK(lhs >= h_t - 1e-9);
    CHECK(lhs >= h_flat_t - 1e-9);  // flattening only tightens
  }
  CHECK(h_flat_t >= h_t - 1e-12);
}
