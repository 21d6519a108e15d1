#include "procunc/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "procunc/parallel.hpp"

namespace procunc {

SortedVector SortedVector::make(std::vector<double> entries) {
  double total = 0.0;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < -1e-12) {
      throw ValidationError("SortedVector: negative entry " + std::to_string(entries[i]));
    }
    if (entries[i] < 0.0) entries[i] = 0.0;
    if (i > 0 && entries[i] > entries[i - 1] + 1e-12) {
      throw ValidationError("SortedVector: ascent at index " + std::to_string(i));
    }
    total += entries[i];
  }
  return SortedVector{std::move(entries), total};
}

namespace {

std::vector<double> sorted_desc(std::span<const double> x, size_t len) {
  std::vector<double> v(x.begin(), x.end());
  v.resize(len, 0.0);
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace

bool weak_majorizes(std::span<const double> y, std::span<const double> x, double eta) {
  size_t len = std::max(x.size(), y.size());
  std::vector<double> xs = sorted_desc(x, len);
  std::vector<double> ys = sorted_desc(y, len);
  double px = 0.0, py = 0.0;
  for (size_t i = 0; i < len; ++i) {
    px += xs[i];
    py += ys[i];
    if (px > py + eta) return false;
  }
  return true;
}

bool majorizes(std::span<const double> y, std::span<const double> x, double eta) {
  double tx = 0.0, ty = 0.0;
  for (double v : x) tx += v;
  for (double v : y) ty += v;
  if (std::abs(tx - ty) > eta) return false;
  return weak_majorizes(y, x, eta);
}

std::optional<std::vector<double>> flatness_step(const std::vector<double>& x) {
  const size_t d = x.size();
  size_t j = 0;
  for (size_t k = 1; k < d; ++k) {
    if (x[k] > x[k - 1]) {
      j = k;
      break;
    }
  }
  if (j == 0) return std::nullopt;

  // Greatest block start i ≤ j with x[i-1] ≥ avg(x[i..j]); x[-1] = +∞.
  size_t i = 0;
  double avg = 0.0;
  double block_sum = x[j];
  size_t block_len = 1;
  for (size_t start = j; start-- > 0;) {
    block_sum += x[start];
    ++block_len;
    double a = block_sum / static_cast<double>(block_len);
    if (start == 0 || x[start - 1] >= a) {
      i = start;
      avg = a;
      break;
    }
  }
  std::vector<double> out = x;
  for (size_t k = i; k <= j; ++k) out[k] = avg;
  return out;
}

SortedVector flatness(std::vector<double> x) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -1e-12) {
      throw ValidationError("flatness: negative entry " + std::to_string(x[i]));
    }
    if (x[i] < 0.0) x[i] = 0.0;
  }
  while (auto next = flatness_step(x)) x = std::move(*next);
  return SortedVector::make(std::move(x));
}

std::vector<std::vector<double>> flatness_trace(std::vector<double> x) {
  std::vector<std::vector<double>> trace;
  trace.push_back(x);
  while (auto next = flatness_step(x)) {
    x = std::move(*next);
    trace.push_back(x);
  }
  return trace;
}

LatticeBounds lattice_bounds(const std::vector<SortedVector>& vectors) {
  if (vectors.empty()) throw ValidationError("lattice_bounds: empty set");
  const Index d = vectors.front().size();
  const double total = vectors.front().total;
  for (const SortedVector& v : vectors) {
    if (v.size() != d) throw DimensionError("lattice_bounds: length mismatch");
    if (std::abs(v.total - total) > tol::prefix) {
      throw ValidationError("lattice_bounds: totals differ: " + std::to_string(v.total) +
                            " vs " + std::to_string(total));
    }
  }

  std::vector<double> min_prefix(static_cast<size_t>(d)), max_prefix(static_cast<size_t>(d));
  for (size_t k = 0; k < static_cast<size_t>(d); ++k) {
    min_prefix[k] = std::numeric_limits<double>::infinity();
    max_prefix[k] = -std::numeric_limits<double>::infinity();
  }
  for (const SortedVector& v : vectors) {
    double prefix = 0.0;
    for (size_t k = 0; k < static_cast<size_t>(d); ++k) {
      prefix += v.entries[k];
      min_prefix[k] = std::min(min_prefix[k], prefix);
      max_prefix[k] = std::max(max_prefix[k], prefix);
    }
  }

  std::vector<double> a(static_cast<size_t>(d)), b(static_cast<size_t>(d));
  for (size_t k = 0; k < static_cast<size_t>(d); ++k) {
    a[k] = min_prefix[k] - (k == 0 ? 0.0 : min_prefix[k - 1]);
    b[k] = max_prefix[k] - (k == 0 ? 0.0 : max_prefix[k - 1]);
  }

  LatticeBounds out;
  out.b_raw = b;
  out.glb = SortedVector::make(std::move(a));
  out.lub = flatness(std::move(b));
  return out;
}

EffectPool make_effect_pool(const Tester& t1, const Tester& t2) {
  if (t1.d_A != t2.d_A || t1.d_B != t2.d_B) {
    throw DimensionError("make_effect_pool: testers act on different spaces");
  }
  EffectPool pool;
  pool.d_A = t1.d_A;
  pool.d_B = t1.d_B;
  pool.m = t1.outcomes();
  pool.n = t2.outcomes();
  pool.effects = t1.effects;
  pool.effects.insert(pool.effects.end(), t2.effects.begin(), t2.effects.end());
  return pool;
}

namespace {

Matrix subset_sum(const EffectPool& pool, unsigned mask) {
  const Index d = pool.d_A * pool.d_B;
  Matrix g = Matrix::Zero(d, d);
  for (Index z = 0; z < pool.size(); ++z) {
    if (mask & (1u << z)) g += pool.effects[static_cast<size_t>(z)];
  }
  return g;
}

std::vector<int> mask_to_subset(unsigned mask, Index size) {
  std::vector<int> subset;
  for (Index z = 0; z < size; ++z) {
    if (mask & (1u << z)) subset.push_back(static_cast<int>(z));
  }
  return subset;
}

}  // namespace

BoundVectors s_vector(const EffectPool& pool, const SVectorOptions& options) {
  const Index N = pool.size();
  if (N < 1) throw ValidationError("s_vector: empty effect pool");
  if (N > options.enumeration_cap) {
    throw EnumerationCapError(
        "s_vector: pool has " + std::to_string(N) + " effects, above the enumeration cap " +
        std::to_string(options.enumeration_cap) +
        "; raise --enumeration-cap if 2^" + std::to_string(N) + " SDP solves are acceptable");
  }

  const unsigned total_masks = 1u << N;
  std::vector<double> values(total_masks, 0.0);
  std::vector<double> gaps(total_masks, 0.0);

  parallel_for(static_cast<Index>(total_masks) - 1, options.threads, [&](Index idx) {
    const unsigned mask = static_cast<unsigned>(idx) + 1;
    sdp::HminSolution sol = sdp::solve_hmin(subset_sum(pool, mask), pool.d_A, pool.d_B);
    if (sol.status != sdp::Status::Solved) {
      throw SolverError("s_vector: SDP failed on subset mask " + std::to_string(mask));
    }
    values[mask] = sol.dual_value;
    gaps[mask] = sol.duality_gap;
  });

  BoundVectors bounds;
  bounds.m = pool.m;
  bounds.n = pool.n;
  bounds.s_cumulative.resize(static_cast<size_t>(N));
  bounds.argmax_subsets.resize(static_cast<size_t>(N));
  bounds.sdp_gaps.resize(static_cast<size_t>(N));
  if (options.keep_optimizers) bounds.primal_optimizers.resize(static_cast<size_t>(N));

  for (Index k = 1; k <= N; ++k) {
    // Lexicographic k-combination scan; the first strict maximum wins.
    std::vector<int> comb(static_cast<size_t>(k));
    for (Index i = 0; i < k; ++i) comb[static_cast<size_t>(i)] = static_cast<int>(i);
    double best = -1.0;
    unsigned best_mask = 0;
    while (true) {
      unsigned mask = 0;
      for (int z : comb) mask |= 1u << z;
      if (values[mask] > best) {
        best = values[mask];
        best_mask = mask;
      }
      // Advance to the next combination.
      Index pos = k;
      while (pos-- > 0) {
        if (comb[static_cast<size_t>(pos)] < static_cast<int>(N - k + pos)) break;
      }
      if (pos == static_cast<Index>(-1)) break;
      ++comb[static_cast<size_t>(pos)];
      for (Index i = pos + 1; i < k; ++i) {
        comb[static_cast<size_t>(i)] = comb[static_cast<size_t>(i - 1)] + 1;
      }
    }
    size_t kk = static_cast<size_t>(k - 1);
    // The max over subsets is nondecreasing in k (PSD monotonicity); enforce
    // it against solver noise so the difference vector stays nonnegative.
    bounds.s_cumulative[kk] = k > 1 ? std::max(best, bounds.s_cumulative[kk - 1]) : best;
    bounds.argmax_subsets[kk] = mask_to_subset(best_mask, N);
    bounds.sdp_gaps[kk] = gaps[best_mask];
    if (options.keep_optimizers) {
      sdp::HminSolution sol =
          sdp::solve_hmin(subset_sum(pool, best_mask), pool.d_A, pool.d_B);
      bounds.primal_optimizers[kk] = sol.J;
    }
  }

  bounds.s.resize(static_cast<size_t>(N));
  for (size_t k = 0; k < static_cast<size_t>(N); ++k) {
    bounds.s[k] = bounds.s_cumulative[k] - (k == 0 ? 0.0 : bounds.s_cumulative[k - 1]);
  }
  bounds.s_flat = flatness(bounds.s).entries;
  return bounds;
}

void t_vector(BoundVectors& bounds) {
  const Index N = bounds.m + bounds.n;
  const Index len = bounds.m * bounds.n;
  bounds.t_cumulative.resize(static_cast<size_t>(len));
  for (Index k = 1; k <= len; ++k) {
    double t;
    if (k + 1 <= N) {
      double s_next = bounds.s_cumulative[static_cast<size_t>(k)];
      t = std::min(1.0, (s_next / 2.0) * (s_next / 2.0));
    } else {
      t = 1.0;  // the covering argument gives no constraint past m+n-1
    }
    size_t kk = static_cast<size_t>(k - 1);
    bounds.t_cumulative[kk] = k > 1 ? std::max(t, bounds.t_cumulative[kk - 1]) : t;
  }
  bounds.t.resize(static_cast<size_t>(len));
  for (size_t k = 0; k < static_cast<size_t>(len); ++k) {
    bounds.t[k] = bounds.t_cumulative[k] - (k == 0 ? 0.0 : bounds.t_cumulative[k - 1]);
  }
  bounds.t_flat = flatness(bounds.t).entries;
}

BoundVectors compute_bounds(const Tester& t1, const Tester& t2,
                            const SVectorOptions& options) {
  BoundVectors bounds = s_vector(make_effect_pool(t1, t2), options);
  t_vector(bounds);
  return bounds;
}

namespace {

// Min over k of prefix_k(bound) - prefix_k(x sorted descending), padding the
// shorter side with zeros.
double min_prefix_slack(std::span<const double> bound, std::span<const double> x_desc) {
  size_t len = std::max(bound.size(), x_desc.size());
  double slack = std::numeric_limits<double>::infinity();
  double pb = 0.0, px = 0.0;
  for (size_t k = 0; k < len; ++k) {
    pb += k < bound.size() ? bound[k] : 0.0;
    px += k < x_desc.size() ? x_desc[k] : 0.0;
    slack = std::min(slack, pb - px);
  }
  return slack;
}

}  // namespace

double UurReport::worst() const {
  return std::min({oplus_vs_s, oplus_vs_flat_s, otimes_vs_t, otimes_vs_flat_t,
                   flat_s_vs_sorted_s, flat_t_vs_sorted_t});
}

UurReport uur_check(const ProbVector& p, const ProbVector& q, const BoundVectors& bounds) {
  if (p.size() != bounds.m || q.size() != bounds.n) {
    throw DimensionError("uur_check: distribution sizes do not match the bounds");
  }
  std::vector<double> oplus = sorted_desc(direct_sum(p, q).entries,
                                          static_cast<size_t>(bounds.m + bounds.n));
  std::vector<double> otimes = sorted_desc(direct_product(p, q).entries,
                                           static_cast<size_t>(bounds.m * bounds.n));
  std::vector<double> s_desc = sorted_desc(bounds.s, bounds.s.size());
  std::vector<double> t_desc = sorted_desc(bounds.t, bounds.t.size());

  UurReport rep;
  rep.oplus_vs_s = min_prefix_slack(bounds.s, oplus);
  rep.oplus_vs_flat_s = min_prefix_slack(bounds.s_flat, oplus);
  rep.otimes_vs_t = min_prefix_slack(bounds.t, otimes);
  rep.otimes_vs_flat_t = min_prefix_slack(bounds.t_flat, otimes);
  rep.flat_s_vs_sorted_s = min_prefix_slack(s_desc, bounds.s_flat);
  rep.flat_t_vs_sorted_t = min_prefix_slack(t_desc, bounds.t_flat);
  return rep;
}

Functional functional_from_name(const std::string& name) {
  if (name == "shannon") return Functional::Shannon;
  if (name == "renyi") return Functional::Renyi;
  if (name == "min-entropy") return Functional::MinEntropy;
  throw ValidationError("unknown Schur-concave functional: " + name);
}

double schur_concave_eval(Functional f, std::span<const double> x, double alpha) {
  for (double v : x) {
    if (v < -1e-10) throw ValidationError("schur_concave_eval: negative entry");
  }
  std::vector<double> clipped(x.begin(), x.end());
  for (double& v : clipped) v = std::max(v, 0.0);
  switch (f) {
    case Functional::Shannon:
      return shannon_entropy(clipped);
    case Functional::Renyi: {
      double total = 0.0;
      for (double v : clipped) total += v;
      return renyi_entropy(ProbVector{clipped, total}, alpha);
    }
    case Functional::MinEntropy: {
      double top = 0.0;
      for (double v : clipped) top = std::max(top, v);
      return top > 0.0 ? -std::log2(top) : std::numeric_limits<double>::infinity();
    }
  }
  throw ValidationError("schur_concave_eval: unreachable");
}

}  // namespace procunc
