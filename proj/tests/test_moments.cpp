#include <doctest.h>

#include <cmath>

#include "orbitcap/cutmaps.hpp"
#include "orbitcap/dynamics.hpp"
#include "orbitcap/moments.hpp"

using namespace orbitcap;
using namespace orbitcap::moments;
using liealg::AlgebraElement;
using liealg::killing_inner;
using liealg::killing_norm;
using orbit::OrbitPoint;
using orbit::TangentPair;

namespace {

CMat vstd(int n, double r) {
  CMat v = CMat::Zero(n + 1, n + 1);
  v(n - 1, n) = cplx(0, -r / 2);
  v(n, n - 1) = cplx(0, -r / 2);
  return v;
}

}  // namespace

TEST_CASE("mu_tangent values") {
  double r = 0.7;
  for (int n : {1, 2, 3}) {
    OrbitPoint z = orbit::base_point(n);
    TangentPair p{z, {vstd(n, r)}, 1.0};
    AlgebraElement mu = mu_tangent(p, 0.0).value;
    CMat expect = CMat::Zero(n + 1, n + 1);
    expect(n - 1, n) = -r / 2;
    expect(n, n - 1) = r / 2;
    CHECK((mu.m - expect).norm() < 1e-14);
  }

  // at v = 0 the twisted moment is s*x: this is the sign forced by the cut
  // map sending (x,0) to the diagonal, where mu_product gives (R1-R2)x = s*x
  OrbitPoint z = orbit::base_point(2);
  TangentPair rest{z, {CMat::Zero(3, 3)}, 1.0};
  double s = 1.3;
  CHECK((mu_tangent(rest, s).value.m - s * z.matrix).norm() < 1e-14);
  auto radii = cutmaps::TwistRadii::from_twist(s);
  AlgebraElement diag = mu_product(z, z, radii.r1, radii.r2).value;
  CHECK((diag.m - s * z.matrix).norm() < 1e-14);

  // and it is the conserved vector along the magnetic flow
  RandomStream rng(31);
  TangentPair p0 = orbit::random_disc_pair(2, rng, 0.8);
  auto rec = dynamics::integrate(p0, s, 1.0, 1e-3);
  AlgebraElement mu0 = mu_tangent(rec.states.front(), s).value;
  double worst_plus = 0, worst_minus = 0;
  for (const auto& st : rec.states) {
    worst_plus = std::max(worst_plus, (mu_tangent(st, s).value - mu0).m.norm());
    AlgebraElement flipped = liealg::bracket({st.base.matrix}, st.vec) -
                             s * AlgebraElement{st.base.matrix};
    AlgebraElement flipped0 = liealg::bracket({rec.states.front().base.matrix},
                                              rec.states.front().vec) -
                              s * AlgebraElement{rec.states.front().base.matrix};
    worst_minus = std::max(worst_minus, (flipped - flipped0).m.norm());
  }
  CHECK(worst_plus < 1e-8);
  CHECK(worst_minus > 1e-2);  // the opposite sign visibly drifts
}

TEST_CASE("mu_tangent equivariance") {
  RandomStream rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    TangentPair p = orbit::random_disc_pair(2, rng);
    liealg::GroupElement g = liealg::sample_group(liealg::SampleKind::group_su, 2, rng);
    double s = 2.0 * rng.uniform() - 1.0;
    TangentPair gp{orbit::adjoint_point(g, p.base), liealg::adjoint(g, p.vec), 1.0};
    CHECK((mu_tangent(gp, s).value - liealg::adjoint(g, mu_tangent(p, s).value)).m.norm() <
          1e-10);
  }
}

TEST_CASE("mu_product") {
  RandomStream rng(33);
  OrbitPoint a = orbit::random_point(2, rng);
  CHECK(killing_norm(mu_product(a, a, 1.0, 1.0).value) < 1e-14);

  // Killing-norm expansion |mu|^2 = (R1^2 + R2^2) m - 2 R1 R2 (a,b)
  for (int trial = 0; trial < 25; ++trial) {
    OrbitPoint p = orbit::random_point(2, rng);
    OrbitPoint q = orbit::random_point(2, rng);
    double r1 = 0.3 + rng.uniform(), r2 = 0.2 + rng.uniform();
    double m = killing_inner({p.matrix}, {p.matrix});
    double ab = killing_inner({p.matrix}, {q.matrix});
    double expect = r1 * r1 * m + r2 * r2 * m - 2 * r1 * r2 * ab;
    AlgebraElement mu = mu_product(p, q, r1, r2).value;
    CHECK(killing_inner(mu, mu) == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK_THROWS_AS(mu_product(a, orbit::base_point(1), 1, 1), std::invalid_argument);
}

TEST_CASE("mu_real") {
  RandomStream rng(34);
  OrbitPoint rp = orbit::random_rp_point(2, rng);
  CHECK(killing_norm(mu_real(rp).value) < 1e-12);
  CHECK(mu_real(rp).tag == GroupTag::SO);

  // the standard forward image has the (1/2) sin(2fr) antisymmetric block
  double r = 0.6;
  OrbitPoint z = orbit::base_point(2);
  TangentPair p{z, {vstd(2, r)}, 1.0};
  OrbitPoint img = cutmaps::forward_rp(p);
  AlgebraElement mu = mu_real(img).value;
  double fr = cutmaps::f_real(r) * r;
  CHECK(mu.m(1, 2).real() == doctest::Approx(-0.5 * std::sin(2 * fr)).epsilon(1e-12));
  CHECK(mu.m(2, 1).real() == doctest::Approx(0.5 * std::sin(2 * fr)).epsilon(1e-12));

  // Hamiltonian property: d(Re,a)(v) + omega_FS(v, a#) = 0
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    OrbitPoint x = orbit::random_point(2, rng);
    AlgebraElement v = orbit::random_tangent(x, rng, 1.0);
    AlgebraElement a = liealg::sample_algebra(liealg::SampleKind::algebra_so, 2, rng);
    auto value = [&](double t) {
      OrbitPoint xt = orbit::from_line(orbit::line_from_matrix(x.matrix + t * v.m));
      return killing_inner(orbit::real_part(xt), a);
    };
    double fd = (value(h) - value(-h)) / (2 * h);
    AlgebraElement asharp = orbit::tangent_project(x, {a.m * x.matrix - x.matrix * a.m});
    double omega = symforms::fubini_study(x, v, asharp);
    CHECK(std::abs(fd + omega) < 1e-6);
  }
}

TEST_CASE("triangle residual") {
  RandomStream rng(35);
  double s = 0.5;
  auto radii = cutmaps::TwistRadii::from_twist(s);
  TangentPair p = orbit::random_disc_pair(2, rng, 0.9);
  auto [a, b] = cutmaps::forward_cp(p, radii);

  double exact = triangle_residual(p, mu_product(a, b, radii.r1, radii.r2), s);
  CHECK(exact < 1e-9);

  TangentPair scaled{p.base, p.vec * 1.01, 1.0};
  double perturbed = triangle_residual(scaled, mu_product(a, b, radii.r1, radii.r2), s);
  CHECK(perturbed > 1e-3);

  OrbitPoint z = orbit::base_point(2);
  TangentPair rest{z, {CMat::Zero(3, 3)}, 1.0};
  CHECK(triangle_residual(rest, mu_product(z, z, 1.0, 1.0), 0.0) < 1e-14);
}
