#pragma once

#include "procunc/linalg.hpp"

namespace procunc {
namespace sdp {

enum class Status { Solved, NumericalFailure };

struct HminOptions {
  int max_iterations = 200;
  double gap_tol = 1e-10;    // absolute duality-gap target
  double feas_tol = 1e-11;   // ‖Tr_B J - 1_A‖_max target
  double step_fraction = 0.98;
};

/// Certified primal-dual solution of the conditional-min-entropy program
///   primal: max ⟨W, J⟩  s.t. Tr_B J = 1_A, J ⪰ 0
///   dual:   min Tr X    s.t. X ⊗ 1_B ⪰ W
/// Both optimizers are returned; feasibility residuals and the true duality
/// gap certify the common optimal value 2^{-H_min(B|A)_W}.
struct HminSolution {
  double primal_value = 0.0;  // ⟨W, J⟩
  double dual_value = 0.0;    // Tr X
  Matrix J;                   // primal optimizer (a Choi matrix)
  Matrix X;                   // dual optimizer on A
  double duality_gap = 0.0;   // dual - primal
  double primal_tp_residual = 0.0;  // ‖Tr_B J - 1_A‖_max
  double primal_psd_residual = 0.0; // max(0, -λ_min(J))
  double dual_psd_residual = 0.0;   // max(0, -λ_min(X⊗1 - W))
  int iterations = 0;
  Status status = Status::NumericalFailure;

  bool certified(double gap = tol::sdp_gap, double feas = tol::sdp_feas) const {
    return std::abs(duality_gap) <= gap && primal_tp_residual <= feas &&
           primal_psd_residual <= feas && dual_psd_residual <= feas;
  }
};

/// Interior-point solve (Mehrotra predictor-corrector, HKM direction).
/// W must be Hermitian with eigenvalues ≥ -tol::psd; small negative
/// eigenvalues are clipped before solving. W = 0 short-circuits to the exact
/// solution (value 0, H_min = +∞).
HminSolution solve_hmin(const Matrix& W, Index d_A, Index d_B,
                        const HminOptions& options = {});

}  // namespace sdp
}  // namespace procunc
