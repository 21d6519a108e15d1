#pragma once

#include <limits>
#include <vector>

#include "procunc/sdp.hpp"
#include "procunc/tester.hpp"

namespace procunc {

/// Nonnegative vector with a declared total mass (1 for p and q, 2 for p⊕q).
struct ProbVector {
  std::vector<double> entries;
  double declared_total = 1.0;

  Index size() const { return static_cast<Index>(entries.size()); }

  /// Entries below -1e-10 are rejected; tiny negatives are clipped to 0.
  /// The sum must match the declared total within tol::prob.
  static ProbVector make(std::vector<double> entries, double declared_total);
};

ProbVector direct_sum(const ProbVector& p, const ProbVector& q);
ProbVector direct_product(const ProbVector& p, const ProbVector& q);

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// Rényi entropy in bits: (1/(1-α)) log₂ Σ p^α, with the limits α→1 (Shannon),
/// α→∞ (-log₂ max p) and α = 0 (log₂ of the support size).
double renyi_entropy(const ProbVector& p, double alpha);

/// Shannon entropy in bits of a raw vector (0·log 0 = 0); no normalization.
double shannon_entropy(const std::vector<double>& x);

struct MuRelationReport {
  double lhs = 0.0;     // H_α(p̃) + H_β(q̃) with the (d_A-1)/d_A padding
  double rhs = 0.0;     // -2 log₂ c(T₁, T₂)
  double slack = 0.0;   // lhs - rhs
  double overlap = 0.0; // c(T₁, T₂)
  std::vector<double> padded_p;
  std::vector<double> padded_q;
};

/// Rényi uncertainty relation for a channel measured by two testers. Requires
/// the harmonic condition 1/α + 1/β = 2 (α = ∞ pairs with β = 1/2).
MuRelationReport mu_relation(const Tester& t1, const Tester& t2,
                             const QuantumChannel& channel, double alpha, double beta);

bool harmonic_pair(double alpha, double beta, double eta = 1e-12);

/// Outcome distribution of the extended tester acting on ρ_Ψ = J/d_A:
/// (p/d_A, (d_A-1)/d_A), which is what the Rényi relation bounds.
std::vector<double> padded_distribution(const ProbVector& p, Index d_A);

enum class SdpStatus { Solved, Infeasible, NumericalFailure };

struct SdpResult {
  double value = 0.0;          // 2^{-H_min(B|A)}
  Matrix optimizer;            // dual: X on A; primal: Choi matrix J on A⊗B
  double duality_gap = 0.0;
  double feasibility_residual = 0.0;
  SdpStatus status = SdpStatus::NumericalFailure;
  bool hmin_infinite = false;  // value = 0 (W = 0)

  /// -log₂(value); +∞ when the value is 0.
  double hmin() const;
};

/// Dual route: value = min{Tr X : X⊗1_B ⪰ W}, optimizer X.
SdpResult hmin_exp_dual(const Matrix& W, Index d_A, Index d_B);
/// Primal route: value = max{Tr[W J] : Tr_B J = 1_A, J ⪰ 0}, optimizer J.
SdpResult hmin_exp_primal(const Matrix& W, Index d_A, Index d_B);

struct ScalingCheckReport {
  double unnormalized = 0.0;  // 2^{-H_min(G)}
  double rescaled = 0.0;      // Tr[G] · 2^{-H_min(G/Tr G)}
  double deviation = 0.0;
  bool degenerate = false;    // Tr G ≈ 0
  bool ok = false;
};

/// Verifies 2^{-H_min(G)} = Tr[G]·2^{-H_min(G/Tr G)} within tol::sdp_gap —
/// the scaling identity behind the process-channel-state formulation of s_k.
ScalingCheckReport hmin_normalized_identity_check(const Matrix& G, Index d_A, Index d_B);

}  // namespace procunc
