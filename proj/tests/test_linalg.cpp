#include "procunc/linalg.hpp"

#include "test_helpers.hpp"

using namespace procunc;
using namespace procunc::testing;

namespace {

// Independent four-index oracle for the partial trace over factor `traced`
// of a two-factor operator.
Matrix partial_trace_oracle_2(const Matrix& op, Index d0, Index d1, int keep) {
  Index dk = keep == 0 ? d0 : d1;
  Index dt = keep == 0 ? d1 : d0;
  Matrix out = Matrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j)
      for (Index t = 0; t < dt; ++t) {
        Index r = keep == 0 ? i * d1 + t : t * d1 + i;
        Index c = keep == 0 ? j * d1 + t : t * d1 + j;
        out(i, j) += op(r, c);
      }
  return out;
}

}  // namespace

TEST_CASE("tensor: identities and projectors") {
  check_close(tensor(identity(2), identity(2)), identity(4), 0.0);

  Matrix d10 = Matrix::Zero(2, 2), d01 = Matrix::Zero(2, 2);
  d10(0, 0) = 1;
  d01(1, 1) = 1;
  Matrix expect = Matrix::Zero(4, 4);
  expect(1, 1) = 1;  // diag(0,1,0,0) in the row-major composite basis
  check_close(tensor(d10, d01), expect, 0.0);
}

TEST_CASE("tensor: PauliX ⊗ PauliZ expanded by hand") {
  // Kronecker definition worked out entry by entry: block structure
  // [[0·Z, 1·Z], [1·Z, 0·Z]].
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 2) = 1;
  expect(1, 3) = -1;
  expect(2, 0) = 1;
  expect(3, 1) = -1;
  check_close(tensor(pauli_x(), pauli_z()), expect, 0.0);
}

TEST_CASE("tensor: associativity is exact") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3), c = rng.ginibre(2, 2);
    Matrix lhs = tensor(tensor(a, b), c);
    Matrix rhs = tensor(a, tensor(b, c));
    CHECK(max_abs(lhs - rhs) == 0.0);
  }
}

TEST_CASE("partial_trace: product state reduces to a factor") {
  Rng rng(12);
  Matrix rho = random_psd(3, rng);
  Matrix sigma = random_psd(2, rng);
  Matrix joint = tensor(rho, sigma);
  check_close(partial_trace(joint, SystemShape{3, 2}, {0}),
              rho * sigma.trace(), 1e-12);
  check_close(partial_trace(joint, SystemShape{3, 2}, {1}),
              sigma * rho.trace(), 1e-12);
}

TEST_CASE("partial_trace: unnormalized φ₊ has identity marginals") {
  check_close(partial_trace(phi_plus(2), SystemShape{2, 2}, {0}), identity(2), 0.0);
  check_close(partial_trace(phi_plus(2), SystemShape{2, 2}, {1}), identity(2), 0.0);
}

TEST_CASE("partial_trace: random Hermitian vs index-sum oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix h = random_hermitian(4, rng);
    check_close(partial_trace(h, SystemShape{2, 2}, {0}),
                partial_trace_oracle_2(h, 2, 2, 0), 1e-14);
    check_close(partial_trace(h, SystemShape{2, 2}, {1}),
                partial_trace_oracle_2(h, 2, 2, 1), 1e-14);
    // total trace preserved
    CHECK(std::abs((partial_trace(h, SystemShape{2, 2}, {1}).trace() - h.trace()))
          <= 1e-10);
  }
}

TEST_CASE("partial_trace: three factors, middle kept") {
  Rng rng(14);
  Matrix a = random_psd(2, rng), b = random_psd(2, rng), c = random_psd(3, rng);
  Matrix joint = tensor(tensor(a, b), c);
  check_close(partial_trace(joint, SystemShape{2, 2, 3}, {1}),
              b * (a.trace() * c.trace()), 1e-12);
  check_close(partial_trace(joint, SystemShape{2, 2, 3}, {0, 2}),
              tensor(a, c) * b.trace(), 1e-12);
}

TEST_CASE("partial_trace: dimension mismatch throws") {
  CHECK_THROWS_AS(partial_trace(identity(4), SystemShape{3, 2}, {0}), DimensionError);
}

TEST_CASE("partial_transpose: product operator transposes one factor") {
  Rng rng(15);
  Matrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
  check_close(partial_transpose(tensor(a, b), SystemShape{2, 3}, 1),
              tensor(a, b.transpose()), 0.0);
}

TEST_CASE("partial_transpose: φ₊ maps to SWAP") {
  // Σ|ii⟩⟨jj| → Σ|ij⟩⟨ji|, the d=2 SWAP worked out by hand.
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  check_close(partial_transpose(phi_plus(2), SystemShape{2, 2}, 1), swap, 0.0);
  check_close(partial_transpose(phi_plus(2), SystemShape{2, 2}, 0), swap, 0.0);
}

TEST_CASE("partial_transpose: involution, hermiticity, trace") {
  Rng rng(16);
  for (int target = 0; target < 2; ++target) {
    Matrix h = random_hermitian(6, rng);
    Matrix pt = partial_transpose(h, SystemShape{2, 3}, target);
    CHECK(max_abs(partial_transpose(pt, SystemShape{2, 3}, target) - h) == 0.0);
    CHECK(hermiticity_residual(pt) <= 1e-14);
    CHECK(std::abs(pt.trace() - h.trace()) == 0.0);
  }
}

TEST_CASE("permute_systems: swap of a product operator") {
  Rng rng(17);
  Matrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3), c = rng.ginibre(2, 2);
  Matrix abc = tensor(tensor(a, b), c);
  check_close(permute_systems(abc, SystemShape{2, 3, 2}, {0, 2, 1}),
              tensor(tensor(a, c), b), 1e-14);
  check_close(permute_systems(abc, SystemShape{2, 3, 2}, {2, 1, 0}),
              tensor(tensor(c, b), a), 1e-14);
}

TEST_CASE("psd_sqrt: identity and scaled projector") {
  check_close(psd_sqrt(identity(3)), identity(3), 1e-12);
  Matrix p = ket_proj((Eigen::VectorXcd(2) << 1, 1).finished() / std::sqrt(2.0));
  check_close(psd_sqrt(4.0 * p), 2.0 * p, 1e-12);
}

TEST_CASE("psd_sqrt: squares back to the input") {
  Rng rng(18);
  for (Index d : {2, 5, 16}) {
    Matrix a = random_psd(d, rng);
    Matrix s = psd_sqrt(a);
    CHECK(min_eig(s) >= -1e-12);
    check_close(s * s, a, 1e-8);
  }
}

TEST_CASE("psd_sqrt: rejects indefinite input") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1;
  bad(1, 1) = -1e-3;
  CHECK_THROWS_AS(psd_sqrt(bad), NotPsdError);
}

TEST_CASE("operator_norm: diagonal, unitary, eigen-oracle") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = -0.7;
  CHECK(operator_norm(d) == doctest::Approx(0.7).epsilon(1e-12));

  Rng rng(19);
  Eigen::HouseholderQR<Matrix> qr(rng.ginibre(4, 4));
  Matrix u = qr.householderQ();
  CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-12));

  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = rng.ginibre(3, 3);
    double via_eig = std::sqrt(max_eig(hermitized(a.adjoint() * a)));
    CHECK(operator_norm(a) == doctest::Approx(via_eig).epsilon(1e-10));
  }
}

TEST_CASE("operator_norm: submultiplicative") {
  Rng rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = rng.ginibre(3, 3), b = rng.ginibre(3, 3);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-10);
  }
}

TEST_CASE("max_eig / min_eig") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 2;
  d(2, 2) = 3;
  CHECK(max_eig(d) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(min_eig(d) == doctest::Approx(1.0).epsilon(1e-14));

  // φ₊ = d · (rank-1 projector): spectrum {2, 0, 0, 0} at d = 2
  CHECK(max_eig(phi_plus(2)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(min_eig(phi_plus(2)) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(21);
  Matrix h = random_hermitian(5, rng);
  double top = max_eig(h);
  for (Index i = 0; i < 5; ++i) CHECK(top >= h(i, i).real() - 1e-12);
}
