#include "procunc/channels.hpp"

#include <cmath>
#include <utility>

namespace procunc {

DensityOperator DensityOperator::make(Matrix m, SystemShape shape) {
  require_hermitian(m, "DensityOperator");
  shape.check_matches(m.rows(), "DensityOperator");
  double lo = min_eig(m);
  if (lo < -tol::psd) {
    throw NotPsdError("DensityOperator: min eigenvalue " + std::to_string(lo));
  }
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::trace_one) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr) +
                          " differs from 1");
  }
  return DensityOperator{std::move(shape), std::move(m)};
}

Povm Povm::make(std::vector<Matrix> effects, SystemShape shape) {
  if (effects.empty()) throw ValidationError("Povm: no effects");
  const Index d = effects.front().rows();
  shape.check_matches(d, "Povm");
  Matrix sum = Matrix::Zero(d, d);
  for (size_t x = 0; x < effects.size(); ++x) {
    const Matrix& e = effects[x];
    if (e.rows() != d || e.cols() != d) {
      throw DimensionError("Povm: effect " + std::to_string(x) + " has wrong dimension");
    }
    require_hermitian(e, "Povm effect");
    double lo = min_eig(e);
    double hi = max_eig(e);
    if (lo < -tol::psd || hi > 1.0 + tol::psd) {
      throw ValidationError("Povm: effect " + std::to_string(x) +
                            " outside [0, 1], eigen range [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    }
    sum += e;
  }
  double completeness = max_abs(sum - Matrix::Identity(d, d));
  if (completeness > tol::effect_sum) {
    throw ValidationError("Povm: effects sum to identity only within " +
                          std::to_string(completeness));
  }
  return Povm{std::move(shape), std::move(effects)};
}

Matrix choi_from_kraus(const std::vector<Matrix>& kraus, Index d_in, Index d_out) {
  if (kraus.empty()) throw ValidationError("choi_from_kraus: empty Kraus list");
  Matrix norm = Matrix::Zero(d_in, d_in);
  for (const Matrix& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in) {
      throw DimensionError("choi_from_kraus: Kraus operator is not d_out x d_in");
    }
    norm += k.adjoint() * k;
  }
  if (max_abs(norm - Matrix::Identity(d_in, d_in)) > tol::effect_sum) {
    throw ValidationError("choi_from_kraus: Σ K†K deviates from identity by " +
                          std::to_string(max_abs(norm - Matrix::Identity(d_in, d_in))));
  }
  // J = Σ_k |v_k⟩⟨v_k| with |v_k⟩ = (1 ⊗ K_k)|φ₊⟩, v[(i,b)] = K_k(b, i).
  Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
  Eigen::VectorXcd v(d_in * d_out);
  for (const Matrix& k : kraus) {
    for (Index i = 0; i < d_in; ++i)
      for (Index b = 0; b < d_out; ++b) v(i * d_out + b) = k(b, i);
    choi += v * v.adjoint();
  }
  return hermitized(choi);
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, Index d_in, Index d_out,
                                    double threshold) {
  require_hermitian(choi, "kraus_from_choi");
  if (choi.rows() != d_in * d_out) {
    throw DimensionError("kraus_from_choi: Choi dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi);
  std::vector<Matrix> kraus;
  for (Index w = es.eigenvalues().size() - 1; w >= 0; --w) {
    double lam = es.eigenvalues()(w);
    if (lam <= threshold) continue;
    double c = std::sqrt(lam);
    Matrix k(d_out, d_in);
    for (Index i = 0; i < d_in; ++i)
      for (Index b = 0; b < d_out; ++b) k(b, i) = c * es.eigenvectors()(i * d_out + b, w);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(d_out, d_in));
  return kraus;
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus, Index d_in,
                                          Index d_out) {
  Matrix choi = choi_from_kraus(kraus, d_in, d_out);
  return QuantumChannel{d_in, d_out, std::move(choi), std::move(kraus)};
}

QuantumChannel QuantumChannel::from_choi(Matrix choi, Index d_in, Index d_out) {
  require_hermitian(choi, "QuantumChannel");
  if (choi.rows() != d_in * d_out) {
    throw DimensionError("QuantumChannel: Choi dimension " + std::to_string(choi.rows()) +
                         " does not equal d_in*d_out");
  }
  QuantumChannel ch{d_in, d_out, std::move(choi), std::nullopt};
  CptpReport r = validate_cptp(ch);
  if (!r.cp_ok) {
    throw NotPsdError("QuantumChannel: Choi min eigenvalue " +
                      std::to_string(r.cp_residual));
  }
  if (!r.tp_ok) {
    throw ValidationError("QuantumChannel: trace preservation residual " +
                          std::to_string(r.tp_residual));
  }
  return ch;
}

QuantumChannel QuantumChannel::make(std::optional<std::vector<Matrix>> kraus,
                                    std::optional<Matrix> choi, Index d_in,
                                    Index d_out) {
  if (!kraus && !choi) {
    throw ValidationError("QuantumChannel: no representation given");
  }
  if (kraus && choi) {
    Matrix from_k = choi_from_kraus(*kraus, d_in, d_out);
    double dev = max_abs(from_k - *choi);
    if (dev > tol::effect_sum) {
      throw ValidationError("QuantumChannel: Kraus and Choi representations disagree by " +
                            std::to_string(dev));
    }
    QuantumChannel ch = from_choi(std::move(*choi), d_in, d_out);
    ch.kraus = std::move(*kraus);
    return ch;
  }
  if (kraus) return from_kraus(std::move(*kraus), d_in, d_out);
  return from_choi(std::move(*choi), d_in, d_out);
}

CptpReport validate_cptp(const QuantumChannel& channel) {
  CptpReport rep;
  rep.cp_residual = min_eig(hermitized(channel.choi));
  Matrix marginal = partial_trace(channel.choi, SystemShape{channel.d_in, channel.d_out}, {0});
  rep.tp_residual = max_abs(marginal - Matrix::Identity(channel.d_in, channel.d_in));
  if (channel.kraus) {
    Matrix norm = Matrix::Zero(channel.d_in, channel.d_in);
    for (const Matrix& k : *channel.kraus) norm += k.adjoint() * k;
    if (max_abs(norm - Matrix::Identity(channel.d_in, channel.d_in)) <= tol::effect_sum) {
      rep.rep_residual = max_abs(choi_from_kraus(*channel.kraus, channel.d_in,
                                                 channel.d_out) - channel.choi);
    } else {
      rep.rep_residual = 1.0;
    }
  }
  rep.cp_ok = rep.cp_residual >= -tol::psd;
  rep.tp_ok = rep.tp_residual <= tol::effect_sum;
  return rep;
}

Matrix apply_via_kraus(const QuantumChannel& channel, const Matrix& x) {
  if (!channel.kraus) throw ValidationError("apply_via_kraus: no Kraus representation");
  if (x.rows() != channel.d_in || x.cols() != channel.d_in) {
    throw DimensionError("apply_via_kraus: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(channel.d_out, channel.d_out);
  for (const Matrix& k : *channel.kraus) out += k * x * k.adjoint();
  return out;
}

Matrix apply_via_choi(const QuantumChannel& channel, const Matrix& x) {
  if (x.rows() != channel.d_in || x.cols() != channel.d_in) {
    throw DimensionError("apply_via_choi: input dimension mismatch");
  }
  Matrix lifted = tensor(x.transpose(), Matrix::Identity(channel.d_out, channel.d_out));
  return partial_trace(lifted * channel.choi, SystemShape{channel.d_in, channel.d_out}, {1});
}

DensityOperator apply(const QuantumChannel& channel, const DensityOperator& state) {
  if (state.dim() != channel.d_in) {
    throw DimensionError("apply: state dimension does not match channel input");
  }
  Matrix out = channel.kraus ? apply_via_kraus(channel, state.op)
                             : apply_via_choi(channel, state.op);
  return DensityOperator::make(hermitized(out));
}

Matrix apply_to_probe(const QuantumChannel& channel, const Matrix& op_ra, Index d_R) {
  if (op_ra.rows() != d_R * channel.d_in) {
    throw DimensionError("apply_to_probe: operator dimension mismatch");
  }
  if (channel.kraus) {
    Matrix out = Matrix::Zero(d_R * channel.d_out, d_R * channel.d_out);
    Matrix eye_r = Matrix::Identity(d_R, d_R);
    for (const Matrix& k : *channel.kraus) {
      Matrix lift = tensor(eye_r, k);
      out += lift * op_ra * lift.adjoint();
    }
    return out;
  }
  // Choi route: (1_R ⊗ Ψ)(Y) = Tr_A[(Y^{T_A} ⊗ 1_B)(1_R ⊗ J)] over (R, A, B).
  SystemShape rab{d_R, channel.d_in, channel.d_out};
  Matrix y_ta = partial_transpose(op_ra, SystemShape{d_R, channel.d_in}, 1);
  Matrix left = tensor(y_ta, Matrix::Identity(channel.d_out, channel.d_out));
  Matrix right = tensor(Matrix::Identity(d_R, d_R), channel.choi);
  return partial_trace(left * right, rab, {0, 2});
}

QuantumChannel random_cptp(Index d_in, Index d_out, Index env_dim, Rng& rng) {
  if (env_dim < 1) throw ValidationError("random_cptp: env_dim must be >= 1");
  if (d_out * env_dim < d_in) {
    throw ValidationError("random_cptp: no isometry into a smaller space");
  }
  Matrix g = rng.ginibre(d_out * env_dim, d_in);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d_out * env_dim, d_in);
  Matrix r = qr.matrixQR().topRows(d_in).triangularView<Eigen::Upper>();
  // Phase fix (Mezzadri): absorb the phases of diag(R) so Q is Haar.
  for (Index c = 0; c < d_in; ++c) {
    Complex d = r(c, c);
    double a = std::abs(d);
    if (a > 0) q.col(c) *= d / a;
  }
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<size_t>(env_dim));
  for (Index e = 0; e < env_dim; ++e) {
    Matrix k(d_out, d_in);
    for (Index b = 0; b < d_out; ++b) k.row(b) = q.row(b * env_dim + e);
    kraus.push_back(std::move(k));
  }
  return QuantumChannel::from_kraus(std::move(kraus), d_in, d_out);
}

QuantumChannel random_cptp(Index d_in, Index d_out, Index env_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(d_in, d_out, env_dim, rng);
}

QuantumChannel state_prep_channel(const DensityOperator& rho) {
  const Index d = rho.dim();
  QuantumChannel ch{1, d, rho.op, kraus_from_choi(rho.op, 1, d)};
  return ch;
}

DensityOperator random_density(Index dim, Rng& rng) {
  Matrix g = rng.ginibre(dim, dim);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator::make(hermitized(m));
}

DensityOperator random_density(const SystemShape& shape, Rng& rng) {
  DensityOperator rho = random_density(shape.total(), rng);
  rho.shape = shape;
  return rho;
}

Povm random_povm(Index dim, Index outcomes, Rng& rng) {
  if (outcomes < 1) throw ValidationError("random_povm: need at least one outcome");
  std::vector<Matrix> raw;
  Matrix sum = Matrix::Zero(dim, dim);
  for (Index x = 0; x < outcomes; ++x) {
    Matrix g = rng.ginibre(dim, dim);
    Matrix a = g * g.adjoint();
    sum += a;
    raw.push_back(std::move(a));
  }
  // S^{-1/2} A_x S^{-1/2} sums to the identity; S is PD almost surely.
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix inv_sqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
                    es.eigenvectors().adjoint();
  std::vector<Matrix> effects;
  effects.reserve(raw.size());
  for (Matrix& a : raw) effects.push_back(hermitized(inv_sqrt * a * inv_sqrt));
  return Povm::make(std::move(effects), SystemShape{dim});
}

Povm random_povm(const SystemShape& shape, Index outcomes, Rng& rng) {
  Povm p = random_povm(shape.total(), outcomes, rng);
  p.shape = shape;
  return p;
}

}  // namespace procunc
