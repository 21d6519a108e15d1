#include "procunc/tester.hpp"

#include "procunc/entropy.hpp"
#include "procunc/harness.hpp"
#include "test_helpers.hpp"

using namespace procunc;
using namespace procunc::testing;

namespace {

Tester make_random_tester(Index d_R, Index d_A, Index d_B, Index outcomes, Rng& rng) {
  DensityOperator rho = random_density(SystemShape{d_R, d_A}, rng);
  Povm povm = random_povm(SystemShape{d_R, d_B}, outcomes, rng);
  return build_tester(rho, povm);
}

}  // namespace

TEST_CASE("build_tester: d_R = 1 reduces to (ρ^A)ᵀ ⊗ M_x") {
  Rng rng(41);
  DensityOperator rho = random_density(SystemShape{1, 2}, rng);
  Povm povm = random_povm(SystemShape{1, 3}, 3, rng);
  Tester t = build_tester(rho, povm);
  for (Index x = 0; x < 3; ++x) {
    check_close(t.effects[static_cast<size_t>(x)],
                tensor(rho.op.transpose(), povm.effects[static_cast<size_t>(x)]), 1e-12);
  }

  // p_x = Tr[M_x Ψ(ρ)]: the direct channel-application oracle
  QuantumChannel ch = random_cptp(2, 3, 6, rng);
  ProbVector p = probabilities(t, ch);
  Matrix out = apply_via_kraus(ch, rho.op);
  for (Index x = 0; x < 3; ++x) {
    double direct = (povm.effects[static_cast<size_t>(x)] * out).trace().real();
    CHECK(p.entries[static_cast<size_t>(x)] == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("build_tester: φ₊/d input with projective POVM on the identity channel") {
  // p_x = Tr[M_x φ₊]/d with J = φ₊ substituted into the probability formula.
  const Index d = 2;
  DensityOperator rho = DensityOperator::make(phi_plus(d) / static_cast<double>(d),
                                              SystemShape{d, d});
  Rng rng(42);
  Povm povm = random_povm(SystemShape{d, d}, 4, rng);
  Tester t = build_tester(rho, povm);
  QuantumChannel id = QuantumChannel::from_kraus({identity(d)}, d, d);
  ProbVector p = probabilities(t, id);
  for (Index x = 0; x < 4; ++x) {
    double direct = (povm.effects[static_cast<size_t>(x)] * phi_plus(d)).trace().real() /
                    static_cast<double>(d);
    CHECK(p.entries[static_cast<size_t>(x)] == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("build_tester: completeness invariant on random inputs") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    Tester t = make_random_tester(2, 2, 2, 3, rng);
    Matrix sum = Matrix::Zero(4, 4);
    for (const Matrix& e : t.effects) sum += e;
    check_close(sum, tensor(t.reduced_input, identity(2)), 1e-10);
  }
}

TEST_CASE("probabilities: trivial POVM gives uniform outcomes") {
  Rng rng(44);
  DensityOperator rho = random_density(SystemShape{2, 2}, rng);
  Povm trivial = Povm::make({0.5 * identity(4), 0.5 * identity(4)}, SystemShape{2, 2});
  Tester t = build_tester(rho, trivial);
  QuantumChannel ch = random_cptp(2, 2, 4, rng);
  ProbVector p = probabilities(t, ch);
  CHECK(p.entries[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(p.entries[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("probabilities: Choi formula equals operational simulation") {
  // Eq.-(5) path vs measuring M on (1_R ⊗ Ψ)(ρ^{RA}).
  Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    Index d_R = 2 + (trial % 2), d_A = 2 + ((trial / 2) % 2), d_B = 2 + ((trial / 4) % 2);
    DensityOperator rho = random_density(SystemShape{d_R, d_A}, rng);
    Povm povm = random_povm(SystemShape{d_R, d_B}, 3, rng);
    Tester t = build_tester(rho, povm);
    QuantumChannel ch = random_cptp(d_A, d_B, d_A * d_B, rng);

    ProbVector p = probabilities(t, ch);
    double sum = 0.0;
    Matrix evolved = apply_to_probe(ch, rho.op, d_R);
    for (Index x = 0; x < 3; ++x) {
      double direct = (povm.effects[static_cast<size_t>(x)] * evolved).trace().real();
      CHECK(std::abs(p.entries[static_cast<size_t>(x)] - direct) <= 1e-8);
      sum += p.entries[static_cast<size_t>(x)];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-8);
  }
}

TEST_CASE("extend: state case appends the zero operator") {
  auto z = z_projectors();
  Tester t = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  ExtendedTester ext = extend(t);
  REQUIRE(ext.effects.size() == 3);
  CHECK(max_abs(ext.effects[2]) <= 1e-12);
}

TEST_CASE("extend: φ₊/d input gives a flat complement") {
  const Index d = 3;
  DensityOperator rho = DensityOperator::make(phi_plus(d) / static_cast<double>(d),
                                              SystemShape{d, d});
  Rng rng(46);
  Povm povm = random_povm(SystemShape{d, d}, 3, rng);
  ExtendedTester ext = extend(build_tester(rho, povm));
  // ρ^A = 1/d ⇒ complement = (1 - 1/d)·1 with eigenvalue (d-1)/d
  check_close(ext.effects.back(),
              (1.0 - 1.0 / static_cast<double>(d)) * identity(d * d), 1e-10);
}

TEST_CASE("extend: extended effects sum to the identity") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    Tester t = make_random_tester(2, 2, 3, 4, rng);
    ExtendedTester ext = extend(t);
    Matrix sum = Matrix::Zero(6, 6);
    for (const Matrix& e : ext.effects) sum += e;
    check_close(sum, identity(6), 1e-10);
  }
}

TEST_CASE("overlap_table: identical rank-1 projective testers have unit diagonal") {
  auto z = z_projectors();
  Tester t = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  OverlapTable table = overlap_table(extend(t), extend(t));
  CHECK(table.entries(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.entries(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.max_overlap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlap_table: Pauli-Z/X state case gives 1/√2") {
  // max_xy ‖M_x^{1/2} N_y^{1/2}‖ for the two mutually unbiased qubit bases,
  // recomputed here rather than assumed.
  auto z = z_projectors();
  auto x = x_projectors();
  Tester tz = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  Tester tx = state_case_tester(Povm::make({x[0], x[1]}, SystemShape{2}));
  OverlapTable table = overlap_table(extend(tz), extend(tx));
  const double expect = 1.0 / std::sqrt(2.0);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b)
      CHECK(table.entries(a, b) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(table.max_overlap == doctest::Approx(expect).epsilon(1e-12));
  // complement rows/columns vanish in the state case
  CHECK(table.entries.row(2).maxCoeff() <= 1e-12);
  CHECK(table.entries.col(2).maxCoeff() <= 1e-12);
  CHECK(table.max_excluding_complement() ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("overlap_table: entries bounded and symmetric under swap") {
  Rng rng(48);
  for (int trial = 0; trial < 5; ++trial) {
    Tester t1 = make_random_tester(2, 2, 2, 3, rng);
    Tester t2 = make_random_tester(2, 2, 2, 2, rng);
    OverlapTable fwd = overlap_table(extend(t1), extend(t2));
    OverlapTable bwd = overlap_table(extend(t2), extend(t1));
    CHECK(fwd.entries.maxCoeff() <= 1.0 + 1e-8);
    check_close(fwd.entries.cast<Complex>(), bwd.entries.transpose().cast<Complex>(),
                1e-10);
  }
}
