#include "procunc/harness.hpp"

#include <algorithm>
#include <cmath>

#include "procunc/parallel.hpp"

namespace procunc {

namespace {

struct SampleStats {
  std::vector<double> mu_slacks;  // one per (α, β) pair
  UurReport uur;
  double shannon_sum = 0.0;  // H(p) + H(q)
  bool valid = false;
  std::string error;
};

}  // namespace

Tester state_case_tester(const Povm& povm) {
  if (povm.shape.factors() != 1) {
    throw DimensionError("state_case_tester: POVM must act on a single factor");
  }
  Matrix one = Matrix::Identity(1, 1);
  DensityOperator trivial = DensityOperator::make(one, SystemShape{1, 1});
  Povm lifted = povm;
  lifted.shape = SystemShape{1, povm.shape.dims[0]};
  return build_tester(trivial, lifted);
}

Tester random_tester(Index d_R, Index d_A, Index d_B, Index outcomes, Rng& rng) {
  DensityOperator rho = random_density(SystemShape{d_R, d_A}, rng);
  Povm povm = random_povm(SystemShape{d_R, d_B}, outcomes, rng);
  return build_tester(rho, povm);
}

TightnessReport tightness_probe(const Tester& t1, const Tester& t2,
                                const BoundVectors& bounds) {
  if (bounds.primal_optimizers.empty()) {
    throw ValidationError("tightness_probe: bounds carry no primal optimizers");
  }
  TightnessReport rep;
  const Index N = bounds.m + bounds.n;
  rep.gaps.resize(static_cast<size_t>(N));
  for (Index k = 1; k <= N; ++k) {
    const Matrix& j_opt = bounds.primal_optimizers[static_cast<size_t>(k - 1)];
    QuantumChannel witness = QuantumChannel::from_choi(j_opt, t1.d_A, t1.d_B);
    ProbVector p = probabilities(t1, witness);
    ProbVector q = probabilities(t2, witness);
    std::vector<double> joint = direct_sum(p, q).entries;
    std::sort(joint.begin(), joint.end(), std::greater<double>());
    double achieved = 0.0;
    for (Index i = 0; i < k; ++i) achieved += joint[static_cast<size_t>(i)];
    rep.gaps[static_cast<size_t>(k - 1)] =
        bounds.s_cumulative[static_cast<size_t>(k - 1)] - achieved;
  }
  for (double g : rep.gaps) rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(g));
  return rep;
}

namespace {

// rhs of the sorted-overlap refinement: -2 log₂ c₁ + Σ_k (2 - s_{2k}) log₂(c_k/c_{k+1}).
// Conventions: a vanishing coefficient kills its term regardless of the
// overlap ratio; once the overlaps hit zero the remaining terms carry no
// weight unless the coefficient is positive, which makes the rhs infinite.
struct ConjectureRhs {
  double rhs = 0.0;
  bool infinite = false;
  std::vector<double> by_range;
};

ConjectureRhs conjecture_rhs(const std::vector<double>& c_sorted,
                             const std::vector<double>& s_cumulative, int terms) {
  ConjectureRhs out;
  const int K = static_cast<int>(c_sorted.size());
  const int N = static_cast<int>(s_cumulative.size());
  int last = terms < 0 ? K - 1 : std::min(terms, K - 1);
  out.rhs = -2.0 * std::log2(std::max(c_sorted.empty() ? 1.0 : c_sorted[0], 1e-300));
  out.by_range.reserve(static_cast<size_t>(std::max(last, 0)));
  for (int k = 1; k <= last; ++k) {
    int idx = std::min(2 * k, N);  // s index clamped at m+n, where s = 2
    double coeff = 2.0 - s_cumulative[static_cast<size_t>(idx - 1)];
    double ck = c_sorted[static_cast<size_t>(k - 1)];
    double cn = c_sorted[static_cast<size_t>(k)];
    if (coeff > 1e-12) {
      if (cn <= 0.0) {
        if (ck > 0.0) out.infinite = true;
      } else {
        out.rhs += coeff * std::log2(ck / cn);
      }
    }
    out.by_range.push_back(out.infinite
                               ? std::numeric_limits<double>::infinity()
                               : out.rhs);
  }
  return out;
}

std::vector<double> sorted_overlaps(const OverlapTable& table) {
  std::vector<double> c;
  c.reserve(static_cast<size_t>(table.entries.size()));
  for (Index x = 0; x < table.entries.rows(); ++x)
    for (Index y = 0; y < table.entries.cols(); ++y) c.push_back(table.entries(x, y));
  std::sort(c.begin(), c.end(), std::greater<double>());
  return c;
}

}  // namespace

ConjectureReport conjecture_explore(const Tester& t1, const Tester& t2,
                                    const CampaignConfig& config) {
  OverlapTable table = overlap_table(extend(t1), extend(t2));
  EffectPool pool = make_effect_pool(t1, t2);
  SVectorOptions opts;
  opts.enumeration_cap = config.enumeration_cap;
  opts.keep_optimizers = false;
  opts.threads = config.threads;
  BoundVectors bounds = s_vector(pool, opts);

  ConjectureReport rep;
  rep.sorted_overlaps = sorted_overlaps(table);
  ConjectureRhs rhs = conjecture_rhs(rep.sorted_overlaps, bounds.s_cumulative,
                                     config.conjecture_terms);
  rep.rhs = rhs.rhs;
  rep.rhs_infinite = rhs.infinite;
  rep.rhs_by_range = rhs.by_range;
  rep.terms = static_cast<int>(rhs.by_range.size());

  const Index env = config.env_dim > 0 ? config.env_dim : t1.d_A * t1.d_B;
  rep.min_lhs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < config.samples; ++i) {
    std::uint64_t s = split_seed(config.seed, static_cast<std::uint64_t>(i));
    QuantumChannel ch = random_cptp(t1.d_A, t1.d_B, env, s);
    double lhs = shannon_entropy(probabilities(t1, ch).entries) +
                 shannon_entropy(probabilities(t2, ch).entries);
    if (lhs < rep.min_lhs) {
      rep.min_lhs = lhs;
      rep.argmin_sample = i;
      rep.argmin_seed = s;
    }
  }
  rep.slack = rep.rhs_infinite ? -std::numeric_limits<double>::infinity()
                               : rep.min_lhs - rep.rhs;
  rep.counterexample_candidate = rep.slack < -1e-7;
  return rep;
}

CampaignReport run_verification(const CampaignConfig& config, const Tester& t1,
                                const Tester& t2) {
  if (t1.d_A != t2.d_A || t1.d_B != t2.d_B) {
    throw DimensionError("run_verification: testers act on different spaces");
  }
  for (const AlphaBetaPair& ab : config.alpha_beta_pairs) {
    if (!harmonic_pair(ab.alpha, ab.beta)) {
      throw ValidationError("run_verification: (α, β) pair violates the harmonic condition");
    }
  }

  CampaignReport rep;
  rep.samples = config.samples;
  rep.m = t1.outcomes();
  rep.n = t2.outcomes();

  ExtendedTester ext1 = extend(t1);
  ExtendedTester ext2 = extend(t2);
  OverlapTable table = overlap_table(ext1, ext2);
  rep.overlap = config.overlap_exclude_complement ? table.max_excluding_complement()
                                                  : table.max_overlap;
  rep.mu_rhs = -2.0 * std::log2(std::max(rep.overlap, 1e-300));

  SVectorOptions opts;
  opts.enumeration_cap = config.enumeration_cap;
  opts.keep_optimizers = config.run_tightness;
  opts.threads = config.threads;
  rep.bounds = s_vector(make_effect_pool(t1, t2), opts);
  t_vector(rep.bounds);

  const Index env = config.env_dim > 0 ? config.env_dim : config.d_A * config.d_B;
  const size_t pairs = config.alpha_beta_pairs.size();

  std::vector<SampleStats> stats(static_cast<size_t>(config.samples));
  parallel_for(config.samples, config.threads, [&](Index i) {
    SampleStats& st = stats[static_cast<size_t>(i)];
    try {
      Rng rng(split_seed(config.seed, static_cast<std::uint64_t>(i)));
      QuantumChannel ch = random_cptp(t1.d_A, t1.d_B, env, rng);
      ProbVector p = probabilities(t1, ch);
      ProbVector q = probabilities(t2, ch);
      st.mu_slacks.reserve(pairs);
      for (const AlphaBetaPair& ab : config.alpha_beta_pairs) {
        double lhs =
            renyi_entropy(ProbVector{padded_distribution(p, t1.d_A), 1.0}, ab.alpha) +
            renyi_entropy(ProbVector{padded_distribution(q, t2.d_A), 1.0}, ab.beta);
        st.mu_slacks.push_back(lhs - rep.mu_rhs);
      }
      st.uur = uur_check(p, q, rep.bounds);
      st.shannon_sum = shannon_entropy(p.entries) + shannon_entropy(q.entries);
      st.valid = true;
    } catch (const std::exception& e) {
      st.error = e.what();
    }
  });

  rep.mu.resize(pairs);
  for (size_t a = 0; a < pairs; ++a) {
    rep.mu[a].alpha = config.alpha_beta_pairs[a].alpha;
    rep.mu[a].beta = config.alpha_beta_pairs[a].beta;
    rep.mu[a].min_slack = std::numeric_limits<double>::infinity();
  }
  UurReport& worst = rep.uur_min;
  worst = UurReport{1e300, 1e300, 1e300, 1e300, 1e300, 1e300};
  double min_shannon = std::numeric_limits<double>::infinity();
  std::int64_t argmin_shannon = -1;

  for (int i = 0; i < config.samples; ++i) {
    const SampleStats& st = stats[static_cast<size_t>(i)];
    const std::uint64_t seed_i = split_seed(config.seed, static_cast<std::uint64_t>(i));
    if (!st.valid) {
      rep.violations.push_back({"invariant", i, seed_i, 0.0, st.error});
      continue;
    }
    for (size_t a = 0; a < pairs; ++a) {
      double slack = st.mu_slacks[a];
      if (slack < rep.mu[a].min_slack) {
        rep.mu[a].min_slack = slack;
        rep.mu[a].argmin_sample = i;
      }
      if (slack < -config.tolerances.mu_slack) {
        ++rep.mu[a].violations;
        rep.violations.push_back({"theorem1", i, seed_i, slack,
                                  "alpha=" + std::to_string(rep.mu[a].alpha) +
                                      " beta=" + std::to_string(rep.mu[a].beta)});
      }
    }
    double oplus_worst = std::min(st.uur.oplus_vs_s, st.uur.oplus_vs_flat_s);
    double otimes_worst = std::min(st.uur.otimes_vs_t, st.uur.otimes_vs_flat_t);
    if (st.uur.worst() < worst.worst()) rep.uur_argmin_sample = i;
    worst.oplus_vs_s = std::min(worst.oplus_vs_s, st.uur.oplus_vs_s);
    worst.oplus_vs_flat_s = std::min(worst.oplus_vs_flat_s, st.uur.oplus_vs_flat_s);
    worst.otimes_vs_t = std::min(worst.otimes_vs_t, st.uur.otimes_vs_t);
    worst.otimes_vs_flat_t = std::min(worst.otimes_vs_flat_t, st.uur.otimes_vs_flat_t);
    worst.flat_s_vs_sorted_s = std::min(worst.flat_s_vs_sorted_s, st.uur.flat_s_vs_sorted_s);
    worst.flat_t_vs_sorted_t = std::min(worst.flat_t_vs_sorted_t, st.uur.flat_t_vs_sorted_t);
    if (oplus_worst < -config.tolerances.uur_slack) {
      ++rep.theorem2_violations;
      rep.violations.push_back({"theorem2", i, seed_i, oplus_worst, ""});
    }
    if (otimes_worst < -config.tolerances.uur_slack) {
      ++rep.theorem3_violations;
      rep.violations.push_back({"theorem3", i, seed_i, otimes_worst, ""});
    }
    if (st.shannon_sum < min_shannon) {
      min_shannon = st.shannon_sum;
      argmin_shannon = i;
    }
  }

  if (config.run_tightness) {
    rep.tightness = tightness_probe(t1, t2, rep.bounds);
    for (size_t k = 0; k < rep.tightness.gaps.size(); ++k) {
      double g = rep.tightness.gaps[k];
      if (std::abs(g) > config.tolerances.tightness_gap) {
        rep.violations.push_back({"tightness", static_cast<std::int64_t>(k + 1),
                                  config.seed, g,
                                  "witness channel misses s_k at k=" + std::to_string(k + 1)});
      }
    }
  }

  if (config.run_conjecture) {
    ConjectureReport& c = rep.conjecture;
    c.sorted_overlaps = sorted_overlaps(table);
    ConjectureRhs rhs =
        conjecture_rhs(c.sorted_overlaps, rep.bounds.s_cumulative, config.conjecture_terms);
    c.rhs = rhs.rhs;
    c.rhs_infinite = rhs.infinite;
    c.rhs_by_range = rhs.by_range;
    c.terms = static_cast<int>(rhs.by_range.size());
    c.min_lhs = min_shannon;
    c.argmin_sample = argmin_shannon;
    c.argmin_seed = argmin_shannon >= 0
                        ? split_seed(config.seed, static_cast<std::uint64_t>(argmin_shannon))
                        : 0;
    c.slack = c.rhs_infinite ? -std::numeric_limits<double>::infinity()
                             : c.min_lhs - c.rhs;
    c.counterexample_candidate = c.slack < -1e-7;
    // Reported as a finding, never as a failure: the refinement is a
    // conjecture, not a theorem under test.
  }

  return rep;
}

StateCaseReport state_case_regression(const Povm& m1, const Povm& m2,
                                      const std::vector<DensityOperator>& states) {
  if (m1.dim() != m2.dim()) {
    throw DimensionError("state_case_regression: POVMs act on different spaces");
  }
  const Index d = m1.dim();
  Tester t1 = state_case_tester(m1);
  Tester t2 = state_case_tester(m2);

  StateCaseReport rep;
  for (const DensityOperator& rho : states) {
    QuantumChannel prep = state_prep_channel(rho);
    ProbVector p = probabilities(t1, prep);
    for (Index x = 0; x < m1.outcomes(); ++x) {
      double direct = (m1.effects[static_cast<size_t>(x)] * rho.op).trace().real();
      rep.max_prob_deviation = std::max(
          rep.max_prob_deviation, std::abs(p.entries[static_cast<size_t>(x)] - direct));
    }
    ProbVector q = probabilities(t2, prep);
    for (Index y = 0; y < m2.outcomes(); ++y) {
      double direct = (m2.effects[static_cast<size_t>(y)] * rho.op).trace().real();
      rep.max_prob_deviation = std::max(
          rep.max_prob_deviation, std::abs(q.entries[static_cast<size_t>(y)] - direct));
    }
  }

  // Direct POVM overlap c(M, N).
  double c_direct = 0.0;
  for (const Matrix& mx : m1.effects)
    for (const Matrix& ny : m2.effects)
      c_direct = std::max(c_direct, operator_norm(psd_sqrt(mx) * psd_sqrt(ny)));
  OverlapTable table = overlap_table(extend(t1), extend(t2));
  rep.overlap = table.max_overlap;
  rep.overlap_deviation = std::abs(table.max_overlap - c_direct);
  rep.mu_bound = -2.0 * std::log2(std::max(table.max_overlap, 1e-300));
  rep.bound_deviation =
      std::abs(rep.mu_bound + 2.0 * std::log2(std::max(c_direct, 1e-300)));

  // Scalar-X reduction: for d_A = 1 the SDP value is λ_max of the summed
  // effects (lifted POVM effects live on B directly).
  EffectPool pool = make_effect_pool(t1, t2);
  BoundVectors bounds = s_vector(pool, SVectorOptions{16, false, 1});
  const Index N = pool.size();
  std::vector<double> oracle(static_cast<size_t>(N), 0.0);
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    Matrix g = Matrix::Zero(d, d);
    int k = 0;
    for (Index z = 0; z < N; ++z) {
      if (mask & (1u << z)) {
        g += pool.effects[static_cast<size_t>(z)];
        ++k;
      }
    }
    size_t kk = static_cast<size_t>(k - 1);
    oracle[kk] = std::max(oracle[kk], max_eig(g));
  }
  for (size_t k = 0; k < static_cast<size_t>(N); ++k) {
    rep.max_s_deviation =
        std::max(rep.max_s_deviation, std::abs(bounds.s_cumulative[k] - oracle[k]));
  }
  return rep;
}

}  // namespace procunc
