#include "procunc/majorization.hpp"

#include "procunc/harness.hpp"
#include "test_helpers.hpp"

using namespace procunc;
using namespace procunc::testing;

TEST_CASE("majorizes: basic cases and the worked lattice example") {
  CHECK(majorizes(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}));

  std::vector<double> lub = {0.6, 0.175, 0.175, 0.05};
  CHECK(majorizes(lub, std::vector<double>{0.6, 0.15, 0.15, 0.1}));
  CHECK(majorizes(lub, std::vector<double>{0.5, 0.25, 0.2, 0.05}));
}

TEST_CASE("majorizes: reflexive, zero-padding, total mismatch") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v(4);
    for (double& x : v) x = rng.uniform();
    CHECK(majorizes(v, v));
  }
  CHECK(majorizes(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(majorizes(std::vector<double>{0.9}, std::vector<double>{0.5, 0.5}));
}

TEST_CASE("weak_majorizes: drops the total-equality requirement") {
  CHECK(weak_majorizes(std::vector<double>{1, 0}, std::vector<double>{0.3, 0.3}));
  // (1,0) and (0,1) weakly majorize each other yet differ
  CHECK(weak_majorizes(std::vector<double>{1, 0}, std::vector<double>{0, 1}));
  CHECK(weak_majorizes(std::vector<double>{0, 1}, std::vector<double>{1, 0}));

  Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(4), y(4);
    for (double& v : x) v = rng.uniform();
    for (double& v : y) v = rng.uniform();
    if (majorizes(y, x)) CHECK(weak_majorizes(y, x));
  }
}

TEST_CASE("flatness: the worked averaging example") {
  SortedVector f = flatness({0.6, 0.15, 0.2, 0.05});
  std::vector<double> expect = {0.6, 0.175, 0.175, 0.05};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(f.entries[i] - expect[i]) <= 1e-12);
  }
}

TEST_CASE("flatness: sorted input unchanged; full averaging of (0,1)") {
  std::vector<double> sorted = {0.5, 0.3, 0.2};
  CHECK(flatness(sorted).entries == sorted);

  SortedVector f = flatness({0.0, 1.0});
  CHECK(f.entries[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.entries[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("flatness: idempotent, total-preserving, prefix-dominating") {
  Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(6);
    double total = 0.0;
    for (double& v : x) {
      v = rng.uniform();
      total += v;
    }
    SortedVector f = flatness(x);

    // nonincreasing
    for (size_t i = 1; i < f.entries.size(); ++i) {
      CHECK(f.entries[i] <= f.entries[i - 1] + 1e-15);
    }
    // total preserved
    CHECK(std::abs(f.total - total) <= 1e-12);
    // prefix sums never decrease
    double px = 0.0, pf = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      px += x[i];
      pf += f.entries[i];
      CHECK(pf >= px - 1e-12);
    }
    // exact idempotence
    CHECK(flatness(f.entries).entries == f.entries);
  }
}

TEST_CASE("lattice_bounds: worked example reproduced to 1e-12") {
  std::vector<SortedVector> set = {SortedVector::make({0.6, 0.15, 0.15, 0.1}),
                                   SortedVector::make({0.5, 0.25, 0.2, 0.05})};
  LatticeBounds lb = lattice_bounds(set);
  std::vector<double> b_expect = {0.6, 0.15, 0.2, 0.05};
  std::vector<double> lub_expect = {0.6, 0.175, 0.175, 0.05};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(lb.b_raw[i] - b_expect[i]) <= 1e-12);
    CHECK(std::abs(lb.lub.entries[i] - lub_expect[i]) <= 1e-12);
  }
}

TEST_CASE("lattice_bounds: singleton and two-point chains") {
  SortedVector v = SortedVector::make({0.7, 0.2, 0.1});
  LatticeBounds single = lattice_bounds({v});
  CHECK(single.glb.entries == v.entries);
  CHECK(single.lub.entries == v.entries);

  LatticeBounds pair = lattice_bounds(
      {SortedVector::make({1.0, 0.0}), SortedVector::make({0.5, 0.5})});
  CHECK(pair.glb.entries == std::vector<double>{0.5, 0.5});
  CHECK(pair.lub.entries == std::vector<double>{1.0, 0.0});
}

TEST_CASE("lattice_bounds: brackets every member") {
  Rng rng(74);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SortedVector> set;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> v(5);
      double total = 0.0;
      for (double& x : v) {
        x = rng.uniform();
        total += x;
      }
      for (double& x : v) x /= total;
      std::sort(v.begin(), v.end(), std::greater<double>());
      set.push_back(SortedVector::make(v));
    }
    LatticeBounds lb = lattice_bounds(set);
    for (const SortedVector& v : set) {
      CHECK(majorizes(v.entries, lb.glb.entries));
      CHECK(majorizes(lb.lub.entries, v.entries));
    }
  }
}

TEST_CASE("lattice_bounds: rejects mismatched totals") {
  CHECK_THROWS_AS(lattice_bounds({SortedVector::make({1.0, 0.0}),
                                  SortedVector::make({0.5, 0.4})}),
                  ValidationError);
  CHECK_THROWS_AS(lattice_bounds({}), ValidationError);
}

TEST_CASE("EffectPool: completeness and full-pool value 2") {
  Rng rng(75);
  DensityOperator rho = random_density(SystemShape{2, 2}, rng);
  DensityOperator sigma = random_density(SystemShape{2, 2}, rng);
  Povm m1 = random_povm(SystemShape{2, 2}, 2, rng);
  Povm m2 = random_povm(SystemShape{2, 2}, 3, rng);
  Tester t1 = build_tester(rho, m1);
  Tester t2 = build_tester(sigma, m2);
  EffectPool pool = make_effect_pool(t1, t2);
  REQUIRE(pool.size() == 5);

  Matrix sum = Matrix::Zero(4, 4);
  for (const Matrix& g : pool.effects) sum += g;
  check_close(sum, tensor(t1.reduced_input + t2.reduced_input, identity(2)), 1e-10);
  CHECK(std::abs(sum.trace().real() - 2.0 * 2.0) <= 1e-9);  // Tr Σ G = 2 d_B

  // X = (ρ^A)ᵀ + (σ^A)ᵀ is optimal for the full pool: value 2.
  BoundVectors bounds = s_vector(pool, SVectorOptions{16, false, 1});
  CHECK(std::abs(bounds.s_cumulative.back() - 2.0) <= 1e-6);
}

TEST_CASE("s_vector: d_A = 1 matches the scalar-X eigenvalue oracle") {
  Rng rng(76);
  Povm m1 = random_povm(2, 2, rng);
  Povm m2 = random_povm(2, 3, rng);
  StateCaseReport rep = state_case_regression(m1, m2, {});
  CHECK(rep.max_s_deviation <= 1e-7);
}

TEST_CASE("s_vector: subset monotonicity") {
  Rng rng(77);
  DensityOperator rho = random_density(SystemShape{2, 2}, rng);
  Povm m = random_povm(SystemShape{2, 2}, 2, rng);
  Tester t1 = build_tester(rho, m);
  Tester t2 = build_tester(random_density(SystemShape{2, 2}, rng),
                           random_povm(SystemShape{2, 2}, 2, rng));
  EffectPool pool = make_effect_pool(t1, t2);

  // hmin value of a subset never exceeds that of a superset
  auto value = [&](unsigned mask) {
    Matrix g = Matrix::Zero(4, 4);
    for (Index z = 0; z < pool.size(); ++z) {
      if (mask & (1u << z)) g += pool.effects[static_cast<size_t>(z)];
    }
    return hmin_exp_dual(g, 2, 2).value;
  };
  for (unsigned mask = 1; mask < 16; ++mask) {
    for (Index z = 0; z < pool.size(); ++z) {
      unsigned super = mask | (1u << z);
      if (super == mask) continue;
      CHECK(value(mask) <= value(super) + 1e-7);
    }
  }

  // s_cumulative nondecreasing, capped at 2
  BoundVectors bounds = s_vector(pool, SVectorOptions{16, false, 1});
  for (size_t k = 1; k < bounds.s_cumulative.size(); ++k) {
    CHECK(bounds.s_cumulative[k] >= bounds.s_cumulative[k - 1]);
    CHECK(bounds.s_cumulative[k] <= 2.0 + 1e-6);
  }
}

TEST_CASE("s_vector: enumeration cap refused with guidance") {
  Rng rng(78);
  Tester t1 = random_tester(2, 2, 2, 9, rng);
  Tester t2 = random_tester(2, 2, 2, 9, rng);
  EffectPool pool = make_effect_pool(t1, t2);
  SVectorOptions opts;
  opts.enumeration_cap = 16;
  CHECK_THROWS_AS(s_vector(pool, opts), EnumerationCapError);
}

TEST_CASE("t_vector: MUB qubit state case reproduces the known first entry") {
  // s₂ = max over 2-subsets of λ_max(G_a + G_b) = 1 + 1/√2 for the Z/X pair,
  // so t₁ = ((1 + 1/√2)/2)².
  auto z = z_projectors();
  auto x = x_projectors();
  Tester tz = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  Tester tx = state_case_tester(Povm::make({x[0], x[1]}, SystemShape{2}));
  BoundVectors bounds = compute_bounds(tz, tx);

  const double s2 = 1.0 + 1.0 / std::sqrt(2.0);
  CHECK(bounds.s_cumulative[1] == doctest::Approx(s2).epsilon(1e-7));
  CHECK(bounds.t_cumulative[0] == doctest::Approx((s2 / 2) * (s2 / 2)).epsilon(1e-7));
  CHECK(bounds.s_cumulative[3] == doctest::Approx(2.0).epsilon(1e-6));
  // past the covering range every prefix target is the probability cap
  CHECK(bounds.t_cumulative.back() == 1.0);
  CHECK(bounds.t_cumulative[2] == 1.0);  // t_k = 1 from k = m+n-1 on
}

TEST_CASE("uur_check: MUB qubit with ρ = |0⟩⟨0|") {
  auto z = z_projectors();
  auto x = x_projectors();
  Tester tz = state_case_tester(Povm::make({z[0], z[1]}, SystemShape{2}));
  Tester tx = state_case_tester(Povm::make({x[0], x[1]}, SystemShape{2}));
  BoundVectors bounds = compute_bounds(tz, tx);

  Matrix ket0 = Matrix::Zero(2, 2);
  ket0(0, 0) = 1;
  QuantumChannel prep = state_prep_channel(DensityOperator::make(ket0));
  ProbVector p = probabilities(tz, prep);
  ProbVector q = probabilities(tx, prep);
  CHECK(p.entries[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q.entries[0] == doctest::Approx(0.5).epsilon(1e-10));

  // sorted p⊕q prefixes (1, 1.5, 2, 2) stay below the s_k
  UurReport rep = uur_check(p, q, bounds);
  CHECK(rep.ok(1e-8));
  CHECK(bounds.s_cumulative[1] >= 1.5);
}

TEST_CASE("uur_check: uniform distributions always majorized") {
  Rng rng(79);
  Tester t1 = random_tester(2, 2, 2, 2, rng);
  Tester t2 = random_tester(2, 2, 2, 2, rng);
  BoundVectors bounds = compute_bounds(t1, t2);
  ProbVector u = ProbVector::make({0.5, 0.5}, 1.0);
  CHECK(uur_check(u, u, bounds).ok(1e-8));
}

TEST_CASE("schur_concave_eval: named functionals") {
  std::vector<double> u = {0.5, 0.5};
  CHECK(schur_concave_eval(Functional::Shannon, u) == doctest::Approx(1.0));
  CHECK(schur_concave_eval(Functional::MinEntropy, u) == doctest::Approx(1.0));
  CHECK(schur_concave_eval(Functional::Renyi, u, 2.0) == doctest::Approx(1.0));
  CHECK(functional_from_name("shannon") == Functional::Shannon);
  CHECK_THROWS_AS(functional_from_name("tsallis"), ValidationError);
}

TEST_CASE("schur_concave_eval: order-reversing under majorization") {
  Rng rng(80);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> p(4);
    double sum = 0.0;
    for (double& v : p) {
      v = rng.uniform();
      sum += v;
    }
    for (double& v : p) v /= sum;
    // mixing toward uniform only descends the majorization order
    double lambda = rng.uniform();
    std::vector<double> q(4);
    for (size_t i = 0; i < 4; ++i) q[i] = lambda * p[i] + (1 - lambda) * 0.25;
    CHECK(majorizes(p, q));
    CHECK(schur_concave_eval(Functional::Shannon, q) >=
          schur_concave_eval(Functional::Shannon, p) - 1e-12);
  }
}
