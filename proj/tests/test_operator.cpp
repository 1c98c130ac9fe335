#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "floq/quasienergy_operator.hpp"
#include "support/test_support.hpp"

using namespace floq;
using floqtest::dense_K;
using floqtest::random_vector;
using floqtest::to_flat;

TEST_CASE("undriven basis states are eigenvectors") {
  SystemParams p(2.0 / 3.0, 0.0);
  AnsatzWindow w(2, 3);
  OperatorContext ctx(p, w);
  for (int n = w.n_min(); n <= w.n_max(); ++n) {
    for (int m = w.m_min(); m <= w.m_max(); ++m) {
      ExtendedVector e = ExtendedVector::basis_state(w, n, m);
      ExtendedVector ke = apply_K(ctx, e);
      double eig = (n + 0.5) * 1.5 + m;
      ExtendedVector diff = ke;
      diff.coeffs -= eig * embed(e, ctx.extended_window()).coeffs;
      CHECK(norm(diff) < 1e-14);
    }
  }
}

TEST_CASE("driven coupling reproduces hand-evaluated matrix elements") {
  // omega_ratio = 2/3, lambda = 1: (lambda/2) sqrt(omega_ratio/2) sqrt(1)
  SystemParams p(2.0 / 3.0, 1.0);
  AnsatzWindow w(0, 2);
  OperatorContext ctx(p, w);
  ExtendedVector e = ExtendedVector::basis_state(w, 0, 0);
  ExtendedVector ke = apply_K(ctx, e);
  const double coupling = 0.28867513459481287;
  CHECK(ke.at(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ke.at(1, 1) == doctest::Approx(coupling).epsilon(1e-14));
  CHECK(ke.at(1, -1) == doctest::Approx(coupling).epsilon(1e-14));
  // nothing else is reached from (0, 0)
  ke.at(0, 0) = ke.at(1, 1) = ke.at(1, -1) = 0.0;
  CHECK(norm(ke) < 1e-15);
}

TEST_CASE("apply_K equals the dense matrix on windows up to dim 200") {
  const std::tuple<int, int, double> cases[] = {
      {0, 4, 0.8}, {2, 4, 1.7}, {10, 3, 0.4}, {0, 6, 2.5}, {5, 5, 1.0}, {50, 2, 3.0}};
  for (auto [n0, r, lam] : cases) {
    SystemParams p(2.0 / 3.0, lam);
    AnsatzWindow w(n0, r);
    REQUIRE(w.dim() <= 200);
    OperatorContext ctx(p, w);
    Eigen::MatrixXd K = dense_K(p, ctx.extended_window(), w);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      ExtendedVector v = random_vector(w, seed);
      Eigen::VectorXd want = K * to_flat(v);
      Eigen::VectorXd got = to_flat(apply_K(ctx, v));
      CHECK((want - got).norm() < 1e-12 * want.norm());
    }
  }
}

TEST_CASE("apply_K with an off-ratio frequency matches the dense matrix") {
  SystemParams p(1.37, 2.2);
  AnsatzWindow w(3, 4);
  OperatorContext ctx(p, w);
  Eigen::MatrixXd K = dense_K(p, ctx.extended_window(), w);
  ExtendedVector v = random_vector(w, 42);
  CHECK((K * to_flat(v) - to_flat(apply_K(ctx, v))).norm() < 1e-12);
}

TEST_CASE("apply_K_into projects onto the requested window") {
  SystemParams p(2.0 / 3.0, 1.3);
  AnsatzWindow w(1, 3);
  OperatorContext ctx(p, w);
  ExtendedVector v = random_vector(w, 5);
  ExtendedVector full = apply_K(ctx, v);
  ExtendedVector onto_w = apply_K_into(ctx, v, w);
  CHECK((onto_w.coeffs - restrict_to(full, w).coeffs).norm() < 1e-14);

  // second application: extended-window vector mapped back onto the window
  ExtendedVector z = apply_K_into(ctx, full, w);
  Eigen::MatrixXd K_wide = dense_K(p, w, ctx.extended_window());
  CHECK((to_flat(z) - K_wide * to_flat(full)).norm() < 1e-12);

  AnsatzWindow outside(1, 5);
  CHECK_THROWS_AS(apply_K_into(ctx, v, outside), InvalidParameter);
  CHECK_THROWS_AS(apply_K(ctx, random_vector(outside, 1)), InvalidParameter);
}

TEST_CASE("K is symmetric under the extended scalar product") {
  SystemParams p(2.0 / 3.0, 1.9);
  AnsatzWindow w(4, 3);
  OperatorContext ctx(p, w);
  for (unsigned seed = 1; seed <= 25; ++seed) {
    ExtendedVector u = random_vector(w, seed);
    ExtendedVector v = random_vector(w, seed + 500);
    double left = overlap(embed(u, ctx.extended_window()), apply_K(ctx, v));
    double right = overlap(apply_K(ctx, u), embed(v, ctx.extended_window()));
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
}

TEST_CASE("residual vanishes on exact eigenpairs and matches the diagonal") {
  SystemParams p(2.0 / 3.0, 0.0);
  AnsatzWindow w(0, 2);
  OperatorContext ctx(p, w);
  ExtendedVector e = ExtendedVector::basis_state(w, 1, -1);
  CHECK(norm(residual(ctx, e, 1.5 * 1.5 - 1.0)) < 1e-14);

  ExtendedVector g = ExtendedVector::basis_state(w, 0, 0);
  CHECK(norm(residual(ctx, g, 0.0)) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("residual norm squared matches the dense quadratic form") {
  SystemParams p(2.0 / 3.0, 1.1);
  AnsatzWindow w(1, 3);
  OperatorContext ctx(p, w);
  Eigen::MatrixXd K = dense_K(p, ctx.extended_window(), w);
  for (double eps : {0.0, 0.7, 2.25}) {
    for (unsigned seed = 1; seed <= 5; ++seed) {
      ExtendedVector v = random_vector(w, seed);
      Eigen::VectorXd flat = to_flat(v);
      // embed the identity part: (K - eps) in the rectangular block sense
      Eigen::VectorXd want = K * flat;
      Eigen::VectorXd emb = to_flat(embed(v, ctx.extended_window()));
      want -= eps * emb;
      double got = residual(ctx, v, eps).coeffs.squaredNorm();
      CHECK(got == doctest::Approx(want.squaredNorm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("functional_F: zero at eigenpairs, scale invariant, nonnegative") {
  SystemParams p0(2.0 / 3.0, 0.0);
  AnsatzWindow w(0, 3);
  OperatorContext ctx0(p0, w);
  ExtendedVector e = ExtendedVector::basis_state(w, 2, 1);
  CHECK(functional_F(ctx0, e, 2.5 * 1.5 + 1.0) < 1e-14);

  SystemParams p(2.0 / 3.0, 1.4);
  OperatorContext ctx(p, w);
  ExtendedVector v = random_vector(w, 9);
  double f1 = functional_F(ctx, v, 0.9);
  CHECK(f1 >= 0.0);
  ExtendedVector scaled = v;
  scaled.coeffs *= -7.25;
  CHECK(functional_F(ctx, scaled, 0.9) == doctest::Approx(f1).epsilon(1e-12));
  CHECK_THROWS_AS(functional_F(ctx, ExtendedVector::zero(w), 0.0), InvalidParameter);
}

TEST_CASE("expectation_K matches the dense Rayleigh quotient") {
  SystemParams p(2.0 / 3.0, 0.0);
  AnsatzWindow w(0, 2);
  OperatorContext ctx(p, w);
  ExtendedVector g = ExtendedVector::basis_state(w, 0, 0);
  CHECK(expectation_K(ctx, g) == doctest::Approx(0.75).epsilon(1e-15));

  SystemParams pd(2.0 / 3.0, 2.1);
  AnsatzWindow wd(2, 4);
  OperatorContext ctxd(pd, wd);
  Eigen::MatrixXd K = dense_K(pd, wd, wd);
  for (unsigned seed = 1; seed <= 8; ++seed) {
    ExtendedVector v = random_vector(wd, seed);
    Eigen::VectorXd flat = to_flat(v);
    double want = flat.dot(K * flat) / flat.squaredNorm();
    CHECK(expectation_K(ctxd, v) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("translating m by one shifts the expectation by exactly one") {
  SystemParams p(2.0 / 3.0, 1.8);
  AnsatzWindow w(1, 4);
  OperatorContext ctx(p, w);
  ExtendedVector v = ExtendedVector::zero(w);
  // populate only m in [-r, r-1] so the shifted copy stays inside the window
  std::mt19937 gen(33);
  std::normal_distribution<double> dist;
  for (int n = w.n_min(); n <= w.n_max(); ++n) {
    for (int m = w.m_min(); m < w.m_max(); ++m) v.at(n, m) = dist(gen);
  }
  ExtendedVector shifted = ExtendedVector::zero(w);
  for (int n = w.n_min(); n <= w.n_max(); ++n) {
    for (int m = w.m_min(); m < w.m_max(); ++m) shifted.at(n, m + 1) = v.at(n, m);
  }
  double diff = expectation_K(ctx, shifted) - expectation_K(ctx, v);
  CHECK(diff == doctest::Approx(1.0).epsilon(1e-12));
}
