#include "procunc/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace procunc {

void SystemShape::check_matches(Index dim, const char* context) const {
  if (dims.empty()) throw DimensionError(std::string(context) + ": empty shape");
  for (Index d : dims) {
    if (d < 1) throw DimensionError(std::string(context) + ": factor dimension < 1");
  }
  if (total() != dim) {
    throw DimensionError(std::string(context) + ": shape product " +
                         std::to_string(total()) + " does not match operator dimension " +
                         std::to_string(dim));
  }
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermiticity_residual: non-square matrix");
  return max_abs(a - a.adjoint());
}

bool is_hermitian(const Matrix& a, double eta) {
  return a.rows() == a.cols() && hermiticity_residual(a) <= eta;
}

void require_hermitian(const Matrix& a, const char* context, double eta) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(context) + ": non-square matrix");
  }
  double r = hermiticity_residual(a);
  if (!(r <= eta)) {
    throw ValidationError(std::string(context) + ": not Hermitian, residual " +
                          std::to_string(r));
  }
}

Matrix hermitized(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Decode composite index into per-factor digits (row-major).
void decode(Index idx, const std::vector<Index>& dims, std::vector<Index>& digits) {
  for (Index f = static_cast<Index>(dims.size()) - 1; f >= 0; --f) {
    digits[static_cast<size_t>(f)] = idx % dims[static_cast<size_t>(f)];
    idx /= dims[static_cast<size_t>(f)];
  }
}

Index encode(const std::vector<Index>& digits, const std::vector<Index>& dims) {
  Index idx = 0;
  for (size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + digits[f];
  return idx;
}

}  // namespace

Matrix partial_trace(const Matrix& op, const SystemShape& shape,
                     const std::vector<int>& keep) {
  if (op.rows() != op.cols()) throw DimensionError("partial_trace: non-square operator");
  shape.check_matches(op.rows(), "partial_trace");
  const auto nf = shape.factors();
  std::vector<bool> kept(static_cast<size_t>(nf), false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw DimensionError("partial_trace: keep index out of range");
    kept[static_cast<size_t>(k)] = true;
  }

  std::vector<Index> keep_dims, trace_dims;
  std::vector<int> keep_idx, trace_idx;
  for (int f = 0; f < nf; ++f) {
    if (kept[static_cast<size_t>(f)]) {
      keep_dims.push_back(shape.dims[static_cast<size_t>(f)]);
      keep_idx.push_back(f);
    } else {
      trace_dims.push_back(shape.dims[static_cast<size_t>(f)]);
      trace_idx.push_back(f);
    }
  }

  Index dk = 1;
  for (Index d : keep_dims) dk *= d;
  Index dt = 1;
  for (Index d : trace_dims) dt *= d;

  Matrix out = Matrix::Zero(dk, dk);
  std::vector<Index> row(static_cast<size_t>(nf)), col(static_cast<size_t>(nf));
  std::vector<Index> kr(keep_idx.size()), kc(keep_idx.size()), td(trace_idx.size());
  for (Index r = 0; r < dk; ++r) {
    decode(r, keep_dims, kr);
    for (Index c = 0; c < dk; ++c) {
      decode(c, keep_dims, kc);
      Complex acc(0.0, 0.0);
      for (Index t = 0; t < dt; ++t) {
        decode(t, trace_dims, td);
        for (size_t f = 0; f < keep_idx.size(); ++f) {
          row[static_cast<size_t>(keep_idx[f])] = kr[f];
          col[static_cast<size_t>(keep_idx[f])] = kc[f];
        }
        for (size_t f = 0; f < trace_idx.size(); ++f) {
          row[static_cast<size_t>(trace_idx[f])] = td[f];
          col[static_cast<size_t>(trace_idx[f])] = td[f];
        }
        acc += op(encode(row, shape.dims), encode(col, shape.dims));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& op, const SystemShape& shape, int target) {
  if (op.rows() != op.cols()) throw DimensionError("partial_transpose: non-square operator");
  shape.check_matches(op.rows(), "partial_transpose");
  if (target < 0 || target >= shape.factors()) {
    throw DimensionError("partial_transpose: target factor out of range");
  }
  const Index n = op.rows();
  const auto nf = shape.factors();
  Matrix out(n, n);
  std::vector<Index> row(static_cast<size_t>(nf)), col(static_cast<size_t>(nf));
  for (Index r = 0; r < n; ++r) {
    decode(r, shape.dims, row);
    for (Index c = 0; c < n; ++c) {
      decode(c, shape.dims, col);
      std::swap(row[static_cast<size_t>(target)], col[static_cast<size_t>(target)]);
      out(encode(row, shape.dims), encode(col, shape.dims)) = op(r, c);
      std::swap(row[static_cast<size_t>(target)], col[static_cast<size_t>(target)]);
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& op, const SystemShape& shape,
                       const std::vector<int>& perm) {
  if (op.rows() != op.cols()) throw DimensionError("permute_systems: non-square operator");
  shape.check_matches(op.rows(), "permute_systems");
  const auto nf = shape.factors();
  if (static_cast<Index>(perm.size()) != nf) {
    throw DimensionError("permute_systems: permutation length mismatch");
  }
  std::vector<bool> seen(static_cast<size_t>(nf), false);
  std::vector<Index> new_dims(static_cast<size_t>(nf));
  for (Index f = 0; f < nf; ++f) {
    int p = perm[static_cast<size_t>(f)];
    if (p < 0 || p >= nf || seen[static_cast<size_t>(p)]) {
      throw DimensionError("permute_systems: invalid permutation");
    }
    seen[static_cast<size_t>(p)] = true;
    new_dims[static_cast<size_t>(f)] = shape.dims[static_cast<size_t>(p)];
  }

  const Index n = op.rows();
  Matrix out(n, n);
  std::vector<Index> row(static_cast<size_t>(nf)), col(static_cast<size_t>(nf));
  std::vector<Index> prow(static_cast<size_t>(nf)), pcol(static_cast<size_t>(nf));
  for (Index r = 0; r < n; ++r) {
    decode(r, shape.dims, row);
    for (Index c = 0; c < n; ++c) {
      decode(c, shape.dims, col);
      for (Index f = 0; f < nf; ++f) {
        prow[static_cast<size_t>(f)] = row[static_cast<size_t>(perm[static_cast<size_t>(f)])];
        pcol[static_cast<size_t>(f)] = col[static_cast<size_t>(perm[static_cast<size_t>(f)])];
      }
      out(encode(prow, new_dims), encode(pcol, new_dims)) = op(r, c);
    }
  }
  return out;
}

Matrix psd_sqrt(const Matrix& op) {
  require_hermitian(op, "psd_sqrt");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op);
  Eigen::VectorXd vals = es.eigenvalues();
  if (vals.minCoeff() < -tol::psd) {
    throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(vals.minCoeff()) +
                      " below -" + std::to_string(tol::psd));
  }
  Eigen::VectorXd roots = vals.cwiseMax(0.0).cwiseSqrt();
  Matrix s = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  return hermitized(s);
}

Matrix clip_psd(const Matrix& op, double eta) {
  require_hermitian(op, "clip_psd");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op);
  Eigen::VectorXd vals = es.eigenvalues();
  if (vals.minCoeff() < -eta) {
    throw NotPsdError("clip_psd: eigenvalue " + std::to_string(vals.minCoeff()) +
                      " below -" + std::to_string(eta));
  }
  if (vals.minCoeff() >= 0.0) return op;
  Matrix c = es.eigenvectors() * vals.cwiseMax(0.0).asDiagonal() *
             es.eigenvectors().adjoint();
  return hermitized(c);
}

double operator_norm(const Matrix& op) {
  if (op.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(op);
  return svd.singularValues()(0);
}

double max_eig(const Matrix& op) {
  require_hermitian(op, "max_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double min_eig(const Matrix& op) {
  require_hermitian(op, "min_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix phi_plus(Index d) {
  Matrix out = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i * d + i, j * d + j) = Complex(1.0, 0.0);
  return out;
}

Matrix identity(Index d) { return Matrix::Identity(d, d); }

}  // namespace procunc
