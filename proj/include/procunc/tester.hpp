#pragma once

#include <vector>

#include "procunc/channels.hpp"

namespace procunc {

struct ProbVector;  // entropy.hpp

/// Process-channel measurement (ρ^{RA}, M): a correlated input state on R⊗A
/// whose probe half runs through the channel, followed by a joint POVM on
/// R⊗B. The derived effects E_x live on A⊗B and give outcome probabilities
/// p_x = Tr[E_x J_Ψ] for any channel Ψ with Choi matrix J_Ψ.
struct Tester {
  Index d_R = 0;
  Index d_A = 0;
  Index d_B = 0;
  DensityOperator input_state;  // on R⊗A
  Povm povm;                    // on R⊗B
  std::vector<Matrix> effects;  // on A⊗B
  Matrix reduced_input;         // (ρ^A)ᵀ = (Tr_R ρ^{RA})ᵀ

  Index outcomes() const { return static_cast<Index>(effects.size()); }
};

/// Builds the effects by the closed form
///   E_x = Tr_R[ ((ρ^{RA})^{T_A} ⊗ 1_B) (M_x^{RB} ⊗ 1_A) ]
/// over the factor order (R, A, B), and checks the completeness invariant
/// Σ_x E_x = (ρ^A)ᵀ ⊗ 1_B at construction.
Tester build_tester(const DensityOperator& input_state, const Povm& povm);

/// Tester with the complement effect 1_{AB} - (ρ^A)ᵀ ⊗ 1_B appended so that
/// the m+1 effects sum to the identity.
struct ExtendedTester {
  Tester base;
  std::vector<Matrix> effects;  // m+1 entries; last is the complement
};

ExtendedTester extend(const Tester& tester);

ProbVector probabilities(const Tester& tester, const QuantumChannel& channel);

/// Pairwise overlaps c_xy = ‖Ẽ_x^{1/2} F̃_y^{1/2}‖ over the extended effect
/// sets, complement row/column included.
struct OverlapTable {
  RealMatrix entries;       // (m+1) x (n+1)
  double max_overlap = 0.0; // max over all entries

  /// Max over x ≤ m, y ≤ n only; exploration toggle, not the paper's
  /// definition.
  double max_excluding_complement() const;
};

OverlapTable overlap_table(const ExtendedTester& t1, const ExtendedTester& t2);

}  // namespace procunc
