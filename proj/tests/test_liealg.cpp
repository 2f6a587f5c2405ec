#include <doctest.h>

#include "orbitcap/liealg.hpp"

using namespace orbitcap;
using namespace orbitcap::liealg;

namespace {

CMat zmat(int n) {
  CMat z = CMat::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) z(k, k) = cplx(0, -1.0 / (n + 1));
  z(n, n) = cplx(0, double(n) / (n + 1));
  return z;
}

// the standard fiber direction with |v| = r, supported in the bottom block
CMat vstd(int n, double r) {
  CMat v = CMat::Zero(n + 1, n + 1);
  v(n - 1, n) = cplx(0, -r / 2);
  v(n, n - 1) = cplx(0, -r / 2);
  return v;
}

// independent trace oracle, no library calls
double trace_inner(const CMat& x, const CMat& y) {
  cplx t = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index k = 0; k < x.cols(); ++k) t += x(i, k) * y(k, i);
  return -2.0 * t.real();
}

}  // namespace

TEST_CASE("killing inner product") {
  AlgebraElement z1{zmat(1)};
  AlgebraElement zero{CMat::Zero(2, 2)};
  CHECK(killing_inner(zero, z1) == doctest::Approx(0.0));
  CHECK(killing_inner(z1, z1) == doctest::Approx(1.0).epsilon(1e-14));
  for (int n : {1, 2, 3}) {
    double r = 0.37;
    AlgebraElement v{vstd(n, r)};
    CHECK(killing_inner(v, v) == doctest::Approx(r * r).epsilon(1e-13));
    CHECK(killing_inner(v, v) == doctest::Approx(trace_inner(v.m, v.m)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(killing_inner(z1, AlgebraElement{zmat(2)}), std::invalid_argument);
}

TEST_CASE("bracket") {
  RandomStream rng(5);
  AlgebraElement x = sample_algebra(SampleKind::algebra_su, 2, rng);
  CHECK(bracket(x, x).m.norm() == doctest::Approx(0.0));

  // [Z, v] maps the homogeneous coordinate z of v to i*z: for the standard v
  // the bottom block becomes (r/2) [[0,-1],[1,0]]
  for (int n : {1, 2, 3}) {
    double r = 0.8;
    AlgebraElement jv = bracket({zmat(n)}, {vstd(n, r)});
    CMat expect = CMat::Zero(n + 1, n + 1);
    expect(n - 1, n) = -r / 2;
    expect(n, n - 1) = r / 2;
    CHECK((jv.m - expect).norm() < 1e-14);
  }

  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement a = sample_algebra(SampleKind::algebra_su, 3, rng);
    AlgebraElement b = sample_algebra(SampleKind::algebra_su, 3, rng);
    AlgebraElement c = sample_algebra(SampleKind::algebra_su, 3, rng);
    AlgebraElement jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                         bracket(c, bracket(a, b));
    CHECK(jac.m.norm() < 1e-12 * std::max(1.0, a.m.norm() * b.m.norm() * c.m.norm()));
    AlgebraElement br = bracket(a, b);
    CHECK(skew_hermitian_residual(br.m) < 1e-12);
    CHECK(trace_residual(br.m) < 1e-12);
  }
}

TEST_CASE("group exponential") {
  GroupElement id = group_exp({CMat::Zero(3, 3)});
  CHECK((id.m - CMat::Identity(3, 3)).norm() < 1e-14);

  RandomStream rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraElement x = sample_algebra(SampleKind::algebra_su, 2, rng);
    GroupElement g = group_exp(x);
    GroupElement ginv = group_exp(-x);
    CHECK((g.m * ginv.m - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(unitarity_residual(g.m) < 1e-10);
    CHECK(std::abs(g.m.determinant() - cplx(1, 0)) < 1e-10);
  }

  // closed form for the 2x2 standard direction: (2v/r)^2 = -I so
  // exp(-t v) = cos(rt/2) I - sin(rt/2) (2/r) v
  double r = 0.6, t = 1.7;
  AlgebraElement v{vstd(1, r)};
  CMat expect = std::cos(r * t / 2) * CMat::Identity(2, 2) -
                std::sin(r * t / 2) * (2.0 / r) * v.m;
  CHECK((group_exp(v * (-t)).m - expect).norm() < 1e-13);
}

TEST_CASE("adjoint action") {
  RandomStream rng(7);
  AlgebraElement z{zmat(2)};
  GroupElement id{CMat::Identity(3, 3)};
  CHECK((adjoint(id, z).m - z.m).norm() == doctest::Approx(0.0));

  for (int trial = 0; trial < 20; ++trial) {
    GroupElement g = sample_group(SampleKind::group_su, 2, rng);
    AlgebraElement x = sample_algebra(SampleKind::algebra_su, 2, rng);
    AlgebraElement y = sample_algebra(SampleKind::algebra_su, 2, rng);
    CHECK(std::abs(killing_inner(adjoint(g, x), adjoint(g, y)) - killing_inner(x, y)) < 1e-10);
    // spectrum is conjugation invariant
    Eigen::VectorXd s1 = hermitian_spectrum(adjoint(g, z));
    Eigen::VectorXd s2 = hermitian_spectrum(z);
    CHECK((s1 - s2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sampling determinism and invariants") {
  AlgebraElement a1 = sample_algebra(SampleKind::algebra_su, 3, 42);
  AlgebraElement a2 = sample_algebra(SampleKind::algebra_su, 3, 42);
  CHECK((a1.m - a2.m).norm() == 0.0);

  AlgebraElement so = sample_algebra(SampleKind::algebra_so, 2, 11);
  CHECK(realness_residual(so.m) == 0.0);
  CHECK((so.m + so.m.transpose()).norm() < 1e-12);

  GroupElement g = sample_group(SampleKind::group_so, 2, 12);
  CHECK(realness_residual(g.m) < 1e-10);
  CHECK(unitarity_residual(g.m) < 1e-10);
  CHECK(std::abs(g.m.determinant() - cplx(1, 0)) < 1e-10);

  AlgebraElement su = sample_algebra(SampleKind::algebra_su, 2, 13);
  CHECK(skew_hermitian_residual(su.m) < 1e-12);
  CHECK(trace_residual(su.m) < 1e-12);
}

TEST_CASE("tolerance registry") {
  Tolerances t;
  CHECK(t.set("antidiagonal", 1e-6));
  CHECK(t.antidiagonal == 1e-6);
  CHECK_FALSE(t.set("nosuchkey", 1.0));
  CHECK(t.algebraic == 1e-12);  // graded defaults
  CHECK(t.exponential == 1e-10);
}

TEST_CASE("exp is a one-parameter homomorphism") {
  RandomStream rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraElement x = sample_algebra(SampleKind::algebra_su, 2, rng);
    double t = 10 * rng.uniform() - 5, s = 10 * rng.uniform() - 5;
    CMat lhs = group_exp(x * (t + s)).m;
    CMat rhs = group_exp(x * t).m * group_exp(x * s).m;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}
