#pragma once

#include <optional>
#include <span>
#include <vector>

#include "procunc/entropy.hpp"

namespace procunc {

/// Nonincreasing nonnegative vector with its total mass.
struct SortedVector {
  std::vector<double> entries;
  double total = 0.0;

  Index size() const { return static_cast<Index>(entries.size()); }

  /// Validates ordering within 1e-12 and computes the total.
  static SortedVector make(std::vector<double> entries);
};

/// x ≺ y: sorted prefix sums of x dominated by those of y and equal totals.
/// Shorter vectors are zero-padded.
bool majorizes(std::span<const double> y, std::span<const double> x,
               double eta = tol::prefix);

/// Prefix-sum domination only; no total-equality requirement.
bool weak_majorizes(std::span<const double> y, std::span<const double> x,
                    double eta = tol::prefix);

/// One averaging step of the flatness process: find the first ascent j, the
/// greatest block start i whose left neighbour dominates the block average
/// (x₀ = +∞), and level the block. Returns nullopt when already nonincreasing.
std::optional<std::vector<double>> flatness_step(const std::vector<double>& x);

/// Full flatness process F: repeated averaging until nonincreasing. Preserves
/// the total and never decreases any prefix sum.
SortedVector flatness(std::vector<double> x);

/// Intermediate vectors of the flatness process, input first, result last.
std::vector<std::vector<double>> flatness_trace(std::vector<double> x);

struct LatticeBounds {
  SortedVector glb;            // a_S: prefix minima differences
  SortedVector lub;            // F(b_S)
  std::vector<double> b_raw;   // b_S before flattening (may be unsorted)
};

/// GLB and LUB of a nonempty set of equal-length, equal-total sorted vectors
/// on the majorization lattice.
LatticeBounds lattice_bounds(const std::vector<SortedVector>& vectors);

/// Concatenated process effects G_z of a tester pair: E_1..E_m then F_1..F_n.
struct EffectPool {
  Index d_A = 0;
  Index d_B = 0;
  Index m = 0;
  Index n = 0;
  std::vector<Matrix> effects;

  Index size() const { return m + n; }
};

EffectPool make_effect_pool(const Tester& t1, const Tester& t2);

struct SVectorOptions {
  int enumeration_cap = 16;
  bool keep_optimizers = true;  // retain the argmax primal Choi matrices
  int threads = 1;              // 0 = hardware concurrency
};

/// Process-independent majorization bounds: s_k = max over k-subsets of
/// 2^{-H_min(B|A)} of the summed effects, t_k = (s_{k+1}/2)² capped at 1,
/// and their flattened improvements.
struct BoundVectors {
  Index m = 0;
  Index n = 0;
  std::vector<double> s_cumulative;  // s_1..s_{m+n}, nondecreasing, ends at 2
  std::vector<double> s;             // differences (s_1, s_2-s_1, ...)
  std::vector<double> s_flat;        // F(s)
  std::vector<double> t_cumulative;  // t_1..t_{m·n}
  std::vector<double> t;             // differences
  std::vector<double> t_flat;        // F(t)
  std::vector<std::vector<int>> argmax_subsets;   // per k, lexicographically first
  std::vector<Matrix> primal_optimizers;          // per k, when retained
  std::vector<double> sdp_gaps;                   // per k, certificate
};

/// Exact subset enumeration (all C(m+n, k) per k); throws EnumerationCapError
/// above options.enumeration_cap.
BoundVectors s_vector(const EffectPool& pool, const SVectorOptions& options = {});

/// Fills the t-side of previously computed s bounds.
void t_vector(BoundVectors& bounds);

/// Convenience: s_vector + t_vector.
BoundVectors compute_bounds(const Tester& t1, const Tester& t2,
                            const SVectorOptions& options = {});

/// Minimum slacks of every link in the chains p⊕q ≺ F(s) ≺ s and
/// p⊗q ≺ F(t) ≺ t. The theorem-side comparisons put the sorted prefix sums
/// of the joint distribution against the construction-order prefixes s_k, t_k;
/// the flattened bounds are sorted by construction.
struct UurReport {
  double oplus_vs_s = 0.0;        // min over k of s_k - prefix_k(sorted p⊕q)
  double oplus_vs_flat_s = 0.0;
  double otimes_vs_t = 0.0;
  double otimes_vs_flat_t = 0.0;
  double flat_s_vs_sorted_s = 0.0;  // F(s) ≺ s↓, proper majorization link
  double flat_t_vs_sorted_t = 0.0;
  double worst() const;
  bool ok(double eta = tol::prefix) const { return worst() >= -eta; }
};

UurReport uur_check(const ProbVector& p, const ProbVector& q, const BoundVectors& bounds);

enum class Functional { Shannon, Renyi, MinEntropy };

Functional functional_from_name(const std::string& name);

/// Schur-concave uncertainty quantifiers applied to a raw nonnegative vector.
double schur_concave_eval(Functional f, std::span<const double> x, double alpha = 1.0);

}  // namespace procunc
