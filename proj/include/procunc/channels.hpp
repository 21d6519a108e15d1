#pragma once

#include <optional>
#include <vector>

#include "procunc/linalg.hpp"
#include "procunc/rng.hpp"

namespace procunc {

/// PSD unit-trace operator, optionally labelled with a tensor-factor shape.
struct DensityOperator {
  SystemShape shape;
  Matrix op;

  Index dim() const { return op.rows(); }

  /// Validates Hermiticity, the PSD floor (-tol::psd) and |Tr - 1| ≤ tol::trace_one.
  static DensityOperator make(Matrix m, SystemShape shape);
  static DensityOperator make(Matrix m) {
    SystemShape s{m.rows()};
    return make(std::move(m), s);
  }
};

/// Set of effects 0 ≤ E ≤ 1 summing to the identity.
struct Povm {
  SystemShape shape;
  std::vector<Matrix> effects;

  Index dim() const { return effects.empty() ? 0 : effects.front().rows(); }
  Index outcomes() const { return static_cast<Index>(effects.size()); }

  static Povm make(std::vector<Matrix> effects, SystemShape shape);
};

/// J = Σ_{ij} |i⟩⟨j|_A ⊗ Ψ(|i⟩⟨j|); input factor first, φ₊ unnormalized, so
/// Tr_B J = 1_A and Tr J = d_in.
Matrix choi_from_kraus(const std::vector<Matrix>& kraus, Index d_in, Index d_out);

/// Eigendecomposition of the Choi matrix; eigenvalues below `threshold` are
/// dropped. Interchange utility, inverse of choi_from_kraus up to gauge.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, Index d_in, Index d_out,
                                    double threshold = 1e-12);

/// CPTP map between finite-dimensional spaces, carried as a Choi matrix with
/// an optional Kraus list kept alongside when it is known.
struct QuantumChannel {
  Index d_in = 0;
  Index d_out = 0;
  Matrix choi;  // on A⊗B, input factor first
  std::optional<std::vector<Matrix>> kraus;

  static QuantumChannel from_kraus(std::vector<Matrix> kraus, Index d_in, Index d_out);
  static QuantumChannel from_choi(Matrix choi, Index d_in, Index d_out);
  /// Loader path: at least one representation must be present; when both are
  /// given they must agree within tol::effect_sum on the Choi matrix.
  static QuantumChannel make(std::optional<std::vector<Matrix>> kraus,
                             std::optional<Matrix> choi, Index d_in, Index d_out);
};

struct CptpReport {
  double cp_residual = 0.0;  // min eigenvalue of the Choi matrix
  double tp_residual = 0.0;  // ‖Tr_B J - 1_A‖_max
  double rep_residual = 0.0; // ‖choi(kraus) - choi‖_max when both exist
  bool cp_ok = false;
  bool tp_ok = false;
  bool ok() const { return cp_ok && tp_ok && rep_residual <= tol::effect_sum; }
};

/// Reports residuals; never throws on a bad channel.
CptpReport validate_cptp(const QuantumChannel& channel);

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& state);
Matrix apply_via_kraus(const QuantumChannel& channel, const Matrix& x);
/// Ψ(X) = Tr_A[(Xᵀ ⊗ 1_B) J]
Matrix apply_via_choi(const QuantumChannel& channel, const Matrix& x);

/// (1_R ⊗ Ψ) acting on an operator over R⊗A; returns an operator over R⊗B.
Matrix apply_to_probe(const QuantumChannel& channel, const Matrix& op_ra, Index d_R);

/// Stinespring sample: Haar-random isometry V : A → B⊗E from a phase-fixed QR
/// of a Ginibre matrix, Ψ(X) = Tr_E[V X V†]. env_dim = d_in·d_out draws
/// full-rank Choi matrices almost surely.
QuantumChannel random_cptp(Index d_in, Index d_out, Index env_dim, Rng& rng);
QuantumChannel random_cptp(Index d_in, Index d_out, Index env_dim, std::uint64_t seed);

/// Channel with trivial input (d_in = 1) whose Choi matrix is the state itself.
QuantumChannel state_prep_channel(const DensityOperator& rho);

/// Ginibre-induced random density operator.
DensityOperator random_density(Index dim, Rng& rng);
DensityOperator random_density(const SystemShape& shape, Rng& rng);

/// Random POVM with `outcomes` effects: Ginibre squares normalized by the
/// inverse square root of their sum.
Povm random_povm(Index dim, Index outcomes, Rng& rng);
Povm random_povm(const SystemShape& shape, Index outcomes, Rng& rng);

}  // namespace procunc
