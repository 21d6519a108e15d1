#include "procunc/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace procunc {
namespace sdp {

namespace {

// Orthonormal real basis of Herm(d) under ⟨A,B⟩ = Tr[AB]: the diagonal
// projectors, then (E_kl + E_lk)/√2 and i(E_kl - E_lk)/√2 for k < l.
struct HermBasis {
  Index d;
  explicit HermBasis(Index dim) : d(dim) {}
  Index size() const { return d * d; }

  // Coefficients of the projection of an arbitrary (not necessarily
  // Hermitian) matrix Q: c_i = Re Tr[B_i Q].
  Eigen::VectorXd coefficients(const Matrix& q) const {
    Eigen::VectorXd c(size());
    Index idx = 0;
    for (Index k = 0; k < d; ++k) c(idx++) = q(k, k).real();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index k = 0; k < d; ++k) {
      for (Index l = k + 1; l < d; ++l) {
        c(idx++) = (q(l, k) + q(k, l)).real() * inv_sqrt2;
        c(idx++) = (q(k, l).imag() - q(l, k).imag()) * inv_sqrt2;
      }
    }
    return c;
  }

  Matrix assemble(const Eigen::VectorXd& c) const {
    Matrix x = Matrix::Zero(d, d);
    Index idx = 0;
    for (Index k = 0; k < d; ++k) x(k, k) = c(idx++);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index k = 0; k < d; ++k) {
      for (Index l = k + 1; l < d; ++l) {
        double s = c(idx++) * inv_sqrt2;
        double a = c(idx++) * inv_sqrt2;
        x(k, l) += Complex(s, a);
        x(l, k) += Complex(s, -a);
      }
    }
    return x;
  }

  Matrix element(Index i) const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
    e(i) = 1.0;
    return assemble(e);
  }
};

// Largest α ≥ 0 with P + α ΔP ⪰ 0, via λ_min(L⁻¹ ΔP L⁻†) for P = LL†.
double max_step(const Eigen::LLT<Matrix>& llt, const Matrix& dp) {
  Matrix l = llt.matrixL();
  Matrix t = l.triangularView<Eigen::Lower>().solve(dp);
  t = l.triangularView<Eigen::Lower>().solve(t.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(t), Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues().minCoeff();
  if (lam >= -1e-14) return 1e100;
  return -1.0 / lam;
}

Matrix partial_trace_b(const Matrix& op, Index d_A, Index d_B) {
  Matrix out = Matrix::Zero(d_A, d_A);
  for (Index a = 0; a < d_A; ++a)
    for (Index c = 0; c < d_A; ++c) {
      Complex acc(0, 0);
      for (Index b = 0; b < d_B; ++b) acc += op(a * d_B + b, c * d_B + b);
      out(a, c) = acc;
    }
  return out;
}

}  // namespace

HminSolution solve_hmin(const Matrix& W_in, Index d_A, Index d_B,
                        const HminOptions& options) {
  const Index n = d_A * d_B;
  if (W_in.rows() != n || W_in.cols() != n) {
    throw DimensionError("solve_hmin: W dimension does not equal d_A*d_B");
  }
  require_hermitian(W_in, "solve_hmin");
  const Matrix W = clip_psd(W_in);

  HminSolution sol;
  const double w_max = max_eig(W);
  if (w_max <= 1e-14) {
    // W = 0: every channel is optimal with value 0 (H_min = +∞).
    sol.J = Matrix::Identity(n, n) / static_cast<double>(d_B);
    sol.X = Matrix::Zero(d_A, d_A);
    sol.status = Status::Solved;
    return sol;
  }

  const HermBasis basis(d_A);
  const Index m = basis.size();
  std::vector<Matrix> lifted(static_cast<size_t>(m));
  const Matrix eye_b = Matrix::Identity(d_B, d_B);
  for (Index i = 0; i < m; ++i) lifted[static_cast<size_t>(i)] = tensor(basis.element(i), eye_b);

  const Matrix eye_a = Matrix::Identity(d_A, d_A);
  const Matrix eye_n = Matrix::Identity(n, n);

  Matrix J = eye_n / static_cast<double>(d_B);       // strictly TP-feasible
  Matrix X = (w_max + 1.0) * eye_a;                  // X⊗1 - W ⪰ 1 ≻ 0

  auto finalize = [&](int iters, Status status) {
    sol.J = J;
    sol.X = X;
    sol.primal_value = (W * J).trace().real();
    sol.dual_value = X.trace().real();
    sol.duality_gap = sol.dual_value - sol.primal_value;
    sol.primal_tp_residual = max_abs(partial_trace_b(J, d_A, d_B) - eye_a);
    sol.primal_psd_residual = std::max(0.0, -min_eig(hermitized(J)));
    sol.dual_psd_residual = std::max(0.0, -min_eig(hermitized(tensor(X, eye_b) - W)));
    sol.iterations = iters;
    sol.status = status;
    return sol;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    Matrix S = hermitized(tensor(X, eye_b) - W);
    double mu = (J * S).trace().real() / static_cast<double>(n);
    double gap = X.trace().real() - (W * J).trace().real();
    Matrix r_p = eye_a - partial_trace_b(J, d_A, d_B);
    if (std::abs(gap) <= options.gap_tol && max_abs(r_p) <= options.feas_tol) {
      return finalize(iter, Status::Solved);
    }

    Eigen::LLT<Matrix> llt_s(S);
    Eigen::LLT<Matrix> llt_j(hermitized(J));
    if (llt_s.info() != Eigen::Success || llt_j.info() != Eigen::Success) {
      break;
    }
    Matrix s_inv = llt_s.solve(eye_n);

    // Schur complement M_ij = Re Tr[(B_i⊗1) J (B_j⊗1) S⁻¹]; PD for J, S ≻ 0.
    Eigen::MatrixXd schur(m, m);
    for (Index j = 0; j < m; ++j) {
      Matrix t = J * (lifted[static_cast<size_t>(j)] * s_inv);
      schur.col(j) = basis.coefficients(partial_trace_b(t, d_A, d_B));
    }
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LDLT<Eigen::MatrixXd> schur_fact(schur);
    if (schur_fact.info() != Eigen::Success) break;

    // Predictor: R_c = -JS. The Schur right-hand side collapses to -1_A.
    Eigen::VectorXd rhs_aff = basis.coefficients(-eye_a);
    Matrix dx_aff = basis.assemble(schur_fact.solve(rhs_aff));
    Matrix ds_aff = tensor(dx_aff, eye_b);
    Matrix dj_aff = hermitized(-J - J * ds_aff * s_inv);

    double ap_aff = std::min(1.0, 0.99 * max_step(llt_j, dj_aff));
    double ad_aff = std::min(1.0, 0.99 * max_step(llt_s, ds_aff));
    double mu_aff = ((J + ap_aff * dj_aff) * (S + ad_aff * ds_aff)).trace().real() /
                    static_cast<double>(n);
    double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    // Corrector, combined step: R_c = σμ·1 - J S - ΔJ_aff ΔS_aff. The Schur
    // right-hand side Tr_B[R_c S⁻¹] - R_p reduces to the expression below
    // because Tr_B[J S S⁻¹] cancels against R_p up to the constant -1_A.
    Matrix cross = dj_aff * ds_aff;
    Matrix rhs_mat = sigma * mu * partial_trace_b(s_inv, d_A, d_B) -
                     partial_trace_b(cross * s_inv, d_A, d_B) - eye_a;
    Matrix dx = basis.assemble(schur_fact.solve(basis.coefficients(rhs_mat)));
    Matrix ds = tensor(dx, eye_b);
    Matrix rc = sigma * mu * eye_n - J * S - cross;
    Matrix dj = hermitized((rc - J * ds) * s_inv);

    double tau = options.step_fraction;
    double ap = std::min(1.0, tau * max_step(llt_j, dj));
    double ad = std::min(1.0, tau * max_step(llt_s, ds));

    J = hermitized(J + ap * dj);
    X = hermitized(X + ad * dx);
  }

  Matrix S = hermitized(tensor(X, eye_b) - W);
  double gap = X.trace().real() - (W * J).trace().real();
  Matrix r_p = eye_a - partial_trace_b(J, d_A, d_B);
  bool certified = std::abs(gap) <= tol::sdp_gap && max_abs(r_p) <= tol::sdp_feas &&
                   min_eig(S) >= -tol::sdp_feas;
  return finalize(options.max_iterations,
                  certified ? Status::Solved : Status::NumericalFailure);
}

}  // namespace sdp
}  // namespace procunc
