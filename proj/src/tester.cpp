#include "procunc/tester.hpp"

#include <cmath>

#include "procunc/entropy.hpp"

namespace procunc {

Tester build_tester(const DensityOperator& input_state, const Povm& povm) {
  if (input_state.shape.factors() != 2) {
    throw DimensionError("build_tester: input state must carry a [d_R, d_A] shape");
  }
  if (povm.shape.factors() != 2) {
    throw DimensionError("build_tester: POVM must carry a [d_R, d_B] shape");
  }
  const Index d_R = input_state.shape.dims[0];
  const Index d_A = input_state.shape.dims[1];
  if (povm.shape.dims[0] != d_R) {
    throw DimensionError("build_tester: reference dimensions disagree");
  }
  const Index d_B = povm.shape.dims[1];

  const SystemShape rab{d_R, d_A, d_B};
  const Matrix eye_a = Matrix::Identity(d_A, d_A);
  const Matrix eye_b = Matrix::Identity(d_B, d_B);

  Matrix rho_ta = partial_transpose(input_state.op, input_state.shape, 1);
  Matrix left = tensor(rho_ta, eye_b);  // on (R, A, B)

  std::vector<Matrix> effects;
  effects.reserve(povm.effects.size());
  for (const Matrix& m : povm.effects) {
    // M_x ⊗ 1_A arrives in (R, B, A) order; swap the last two factors.
    Matrix lifted = permute_systems(tensor(m, eye_a), SystemShape{d_R, d_B, d_A},
                                    {0, 2, 1});
    effects.push_back(hermitized(partial_trace(left * lifted, rab, {1, 2})));
  }

  Matrix reduced = partial_trace(input_state.op, input_state.shape, {0}).transpose();

  Matrix sum = Matrix::Zero(d_A * d_B, d_A * d_B);
  for (const Matrix& e : effects) sum += e;
  double residual = max_abs(sum - tensor(reduced, eye_b));
  if (residual > tol::effect_sum) {
    throw ValidationError("build_tester: Σ E_x deviates from (ρ^A)ᵀ ⊗ 1_B by " +
                          std::to_string(residual));
  }
  for (size_t x = 0; x < effects.size(); ++x) {
    double lo = min_eig(effects[x]);
    if (lo < -tol::psd) {
      throw NotPsdError("build_tester: effect " + std::to_string(x) +
                        " has eigenvalue " + std::to_string(lo));
    }
  }

  return Tester{d_R, d_A, d_B, input_state, povm, std::move(effects), std::move(reduced)};
}

ExtendedTester extend(const Tester& tester) {
  const Index d = tester.d_A * tester.d_B;
  Matrix complement = Matrix::Identity(d, d) -
                      tensor(tester.reduced_input, Matrix::Identity(tester.d_B, tester.d_B));
  complement = hermitized(complement);
  double lo = min_eig(complement);
  if (lo < -tol::psd) {
    throw NotPsdError("extend: complement effect has eigenvalue " + std::to_string(lo) +
                      "; upstream state is corrupt");
  }
  std::vector<Matrix> effects = tester.effects;
  effects.push_back(std::move(complement));

  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : effects) sum += e;
  double residual = max_abs(sum - Matrix::Identity(d, d));
  if (residual > tol::effect_sum) {
    throw ValidationError("extend: extended effects sum to identity only within " +
                          std::to_string(residual));
  }
  return ExtendedTester{tester, std::move(effects)};
}

ProbVector probabilities(const Tester& tester, const QuantumChannel& channel) {
  if (tester.d_A != channel.d_in || tester.d_B != channel.d_out) {
    throw DimensionError("probabilities: tester and channel dimensions disagree");
  }
  std::vector<double> p;
  p.reserve(tester.effects.size());
  for (size_t x = 0; x < tester.effects.size(); ++x) {
    Complex raw = (tester.effects[x] * channel.choi).trace();
    double v = raw.real();
    if (v < -tol::prob || v > 1.0 + tol::prob) {
      throw ValidationError("probabilities: outcome " + std::to_string(x) +
                            " has weight " + std::to_string(v));
    }
    p.push_back(std::min(std::max(v, 0.0), 1.0));
  }
  return ProbVector::make(std::move(p), 1.0);
}

double OverlapTable::max_excluding_complement() const {
  if (entries.rows() < 2 || entries.cols() < 2) return 0.0;
  return entries.topLeftCorner(entries.rows() - 1, entries.cols() - 1).maxCoeff();
}

OverlapTable overlap_table(const ExtendedTester& t1, const ExtendedTester& t2) {
  if (t1.base.d_A != t2.base.d_A || t1.base.d_B != t2.base.d_B) {
    throw DimensionError("overlap_table: testers act on different spaces");
  }
  std::vector<Matrix> roots1, roots2;
  roots1.reserve(t1.effects.size());
  roots2.reserve(t2.effects.size());
  for (const Matrix& e : t1.effects) roots1.push_back(psd_sqrt(e));
  for (const Matrix& e : t2.effects) roots2.push_back(psd_sqrt(e));

  OverlapTable table;
  table.entries.resize(static_cast<Index>(roots1.size()), static_cast<Index>(roots2.size()));
  for (size_t x = 0; x < roots1.size(); ++x)
    for (size_t y = 0; y < roots2.size(); ++y)
      table.entries(static_cast<Index>(x), static_cast<Index>(y)) =
          operator_norm(roots1[x] * roots2[y]);
  table.max_overlap = table.entries.maxCoeff();
  return table;
}

}  // namespace procunc
