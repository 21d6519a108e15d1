#pragma once

#include <vector>

#include "procunc/common.hpp"

namespace procunc {

/// Ordered list of tensor-factor dimensions. The global composite-index
/// convention is row-major: for dims [d0, d1, d2] the basis label is
/// i = (i0*d1 + i1)*d2 + i2, matching nested Kronecker products built
/// left-to-right. Multi-system operators in this library always use the
/// factor order (R, A, B).
struct SystemShape {
  std::vector<Index> dims;

  SystemShape() = default;
  SystemShape(std::initializer_list<Index> d) : dims(d) {}
  explicit SystemShape(std::vector<Index> d) : dims(std::move(d)) {}

  Index total() const {
    Index t = 1;
    for (Index d : dims) t *= d;
    return t;
  }
  Index factors() const { return static_cast<Index>(dims.size()); }

  /// Throws DimensionError unless the shape labels a dim-by-dim operator.
  void check_matches(Index dim, const char* context) const;
};

double max_abs(const Matrix& a);

/// ‖A - A†‖_max
double hermiticity_residual(const Matrix& a);
bool is_hermitian(const Matrix& a, double eta = tol::herm);
/// Throws ValidationError when the residual exceeds eta.
void require_hermitian(const Matrix& a, const char* context, double eta = tol::herm);
/// (A + A†)/2
Matrix hermitized(const Matrix& a);

/// Kronecker product, row-major block convention: the left factor is the
/// slow index.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Trace over every factor not listed in `keep` (indices into shape.dims,
/// strictly increasing). The kept factors stay in their original order.
Matrix partial_trace(const Matrix& op, const SystemShape& shape,
                     const std::vector<int>& keep);

/// Transpose the single factor `target`, leaving the rest untouched.
Matrix partial_transpose(const Matrix& op, const SystemShape& shape, int target);

/// Reorder tensor factors: output factor i is input factor perm[i].
Matrix permute_systems(const Matrix& op, const SystemShape& shape,
                       const std::vector<int>& perm);

/// PSD square root via eigendecomposition. Eigenvalues in (-tol::psd, 0) are
/// clipped to 0; anything below -tol::psd throws NotPsdError.
Matrix psd_sqrt(const Matrix& op);

/// Clip eigenvalues in (-tol::psd, 0) to zero; throws NotPsdError below the
/// floor. Returns an exactly-PSD Hermitian matrix.
Matrix clip_psd(const Matrix& op, double eta = tol::psd);

/// Largest singular value.
double operator_norm(const Matrix& op);

/// Extremal eigenvalues of a Hermitian operator.
double max_eig(const Matrix& op);
double min_eig(const Matrix& op);

/// Unnormalized maximally entangled operator Σ_{ij} |ii⟩⟨jj| on two copies
/// of a d-dimensional space (trace d).
Matrix phi_plus(Index d);

Matrix identity(Index d);

}  // namespace procunc
