#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "procunc/majorization.hpp"

namespace procunc {

struct AlphaBetaPair {
  double alpha = 1.0;
  double beta = 1.0;
};

struct ToleranceSet {
  double mu_slack = 1e-7;       // Theorem-1 slack floor
  double uur_slack = 1e-8;      // Theorem-2/3 prefix slack floor
  double tightness_gap = 1e-6;  // witness-channel gap ceiling
};

struct CampaignConfig {
  std::uint64_t seed = 0;
  int samples = 1000;
  Index d_R = 2;
  Index d_A = 2;
  Index d_B = 2;
  Index env_dim = 0;  // 0 = d_A * d_B
  std::vector<AlphaBetaPair> alpha_beta_pairs = {
      {1.0, 1.0}, {2.0, 2.0 / 3.0}, {kInfiniteOrder, 0.5}};
  ToleranceSet tolerances;
  int enumeration_cap = 16;
  int threads = 1;  // 0 = hardware concurrency
  bool run_tightness = true;
  bool run_conjecture = true;
  int conjecture_terms = -1;  // -1 = (m+1)(n+1) - 1
  bool overlap_exclude_complement = false;
};

struct Violation {
  std::string kind;      // "theorem1", "theorem2", "theorem3", "tightness", ...
  std::int64_t sample = -1;
  std::uint64_t seed = 0;  // channel seed reproducing the violation
  double slack = 0.0;
  std::string detail;
};

struct PairSlackSummary {
  double alpha = 0.0;
  double beta = 0.0;
  double min_slack = 0.0;
  std::int64_t argmin_sample = -1;
  int violations = 0;
};

struct TightnessReport {
  std::vector<double> gaps;  // per k: s_k minus the witness channel's top-k mass
  double max_abs_gap = 0.0;
};

/// Runs the channel optimizing each s_k through both testers and compares the
/// achieved top-k mass of p⊕q with s_k.
TightnessReport tightness_probe(const Tester& t1, const Tester& t2,
                                const BoundVectors& bounds);

struct ConjectureReport {
  std::vector<double> sorted_overlaps;  // c_1 ≥ c_2 ≥ ...
  double rhs = 0.0;
  bool rhs_infinite = false;
  std::vector<double> rhs_by_range;  // value after truncating the sum at each k
  int terms = 0;
  double min_lhs = 0.0;          // min over samples of H(p) + H(q)
  std::int64_t argmin_sample = -1;
  std::uint64_t argmin_seed = 0;
  double slack = 0.0;            // min_lhs - rhs
  bool counterexample_candidate = false;
};

/// Sorted-overlap refinement of the Shannon relation; numerically explored,
/// never asserted. A slack below -1e-7 is flagged with reproduction data.
ConjectureReport conjecture_explore(const Tester& t1, const Tester& t2,
                                    const CampaignConfig& config);

struct CampaignReport {
  int samples = 0;
  Index m = 0;
  Index n = 0;
  double overlap = 0.0;
  double mu_rhs = 0.0;  // -2 log₂ c
  std::vector<PairSlackSummary> mu;
  UurReport uur_min;  // per-link minima across samples
  std::int64_t uur_argmin_sample = -1;
  int theorem2_violations = 0;
  int theorem3_violations = 0;
  BoundVectors bounds;
  TightnessReport tightness;
  ConjectureReport conjecture;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

/// Samples `samples` channels (seed-split, scheduling-independent) and checks
/// every relation against the precomputed process-independent bounds.
/// Violations are collected, never thrown.
CampaignReport run_verification(const CampaignConfig& config, const Tester& t1,
                                const Tester& t2);

struct StateCaseReport {
  double max_prob_deviation = 0.0;     // pipeline p_x vs Tr[M_x ρ]
  double overlap_deviation = 0.0;      // c(T₁,T₂) vs c(M,N)
  double bound_deviation = 0.0;        // -2 log c, both routes
  double max_s_deviation = 0.0;        // SDP s_k vs λ_max subset oracle
  double overlap = 0.0;
  double mu_bound = 0.0;
  bool ok() const {
    return max_prob_deviation <= 1e-9 && overlap_deviation <= 1e-9 &&
           bound_deviation <= 1e-9 && max_s_deviation <= tol::sdp_feas;
  }
};

/// d_A = 1 reduction: wraps states as state-preparation channels, runs the
/// full process pipeline and compares every scalar against the directly
/// computed state-case quantities.
StateCaseReport state_case_regression(const Povm& m1, const Povm& m2,
                                      const std::vector<DensityOperator>& states);

/// Tester with trivial reference and trivial probe (d_R = d_A = 1) whose
/// effects coincide with the POVM itself; the state-case embedding.
Tester state_case_tester(const Povm& povm);

/// Random tester on (d_R, d_A) ⊗ (d_R, d_B) with `outcomes` effects.
Tester random_tester(Index d_R, Index d_A, Index d_B, Index outcomes, Rng& rng);

}  // namespace procunc
