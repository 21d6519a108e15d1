#pragma once

#include <doctest.h>

#include "procunc/channels.hpp"

namespace procunc::testing {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix ket_proj(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

/// Z eigenbasis projectors {|0⟩⟨0|, |1⟩⟨1|}.
inline std::vector<Matrix> z_projectors() {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  return {p0, p1};
}

/// X eigenbasis projectors {|+⟩⟨+|, |-⟩⟨-|}.
inline std::vector<Matrix> x_projectors() {
  Matrix pp(2, 2), pm(2, 2);
  pp << 0.5, 0.5, 0.5, 0.5;
  pm << 0.5, -0.5, -0.5, 0.5;
  return {pp, pm};
}

inline Matrix random_hermitian(Index d, Rng& rng) {
  return hermitized(rng.ginibre(d, d));
}

inline Matrix random_psd(Index d, Rng& rng) {
  Matrix g = rng.ginibre(d, d);
  return hermitized(g * g.adjoint());
}

inline void check_close(const Matrix& a, const Matrix& b, double tol) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  CHECK(max_abs(a - b) <= tol);
}

}  // namespace procunc::testing
