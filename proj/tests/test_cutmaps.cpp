#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "orbitcap/cutmaps.hpp"
#include "orbitcap/io.hpp"

using namespace orbitcap;
using namespace orbitcap::cutmaps;
using liealg::AlgebraElement;
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

TEST_CASE("scalar cut functions") {
  CHECK(c_untwisted(1e-9) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c_untwisted(1.0) == doctest::Approx(M_PI / 12).epsilon(1e-15));
  double r = 0.5;
  CHECK(std::abs(2 * std::sin(2 * c_untwisted(r) * r) - r) < 1e-14);
  CHECK(c_untwisted(-0.73) == c_untwisted(0.73));
  CHECK_THROWS_AS(c_untwisted(2.0), std::invalid_argument);

  CHECK(f_real(1e-9) == doctest::Approx(0.5).epsilon(1e-12));
  r = 0.9;
  CHECK(std::abs(std::sin(2 * f_real(r) * r) - r) < 1e-14);
  CHECK(f_real(-0.31) == f_real(0.31));
  CHECK_THROWS_AS(f_real(1.0), std::invalid_argument);
}

TEST_CASE("twist radii") {
  auto r0 = TwistRadii::from_twist(0.0);
  CHECK(r0.r1 == doctest::Approx(0.5));
  CHECK(r0.r2 == doctest::Approx(0.5));
  for (double s : {-3.0, 0.7, 10.0}) {
    auto rr = TwistRadii::from_twist(s);
    CHECK(4 * rr.r1 * rr.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rr.r1 - rr.r2 == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("cut pair solver") {
  for (double s : {0.0, 0.5, 2.0, 10.0}) {
    auto radii = TwistRadii::from_twist(s);
    CutPair c0 = solve_cut_pair(0.0, radii);
    CHECK(std::abs(2 * c0.c1 - 1.0 / (radii.r1 + 0.5)) < 1e-13);
    CHECK(std::abs(2 * c0.c2 - 1.0 / (radii.r2 + 0.5)) < 1e-13);
    for (double r : {0.05, 0.3, 0.77, 0.99}) {
      CutPair c = solve_cut_pair(r, radii);
      CHECK(c.residual < 1e-12);
      double branch = 2 * r * (c.c1 + c.c2);
      CHECK(branch > 0);
      CHECK(branch < M_PI);
      if (s == 0.0) {
        double expect = std::asin(r) / (2 * r);
        CHECK(std::abs(c.c1 - expect) < 1e-10);
        CHECK(std::abs(c.c2 - expect) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(solve_cut_pair(1.0, TwistRadii::from_twist(1.0)), std::invalid_argument);

  // the separation identity behind the inverse: sin(r(c1+c2)) = r
  for (double s : {0.0, 0.5, 2.0}) {
    auto radii = TwistRadii::from_twist(s);
    for (double r : {0.2, 0.6, 0.9}) {
      CutPair c = solve_cut_pair(r, radii);
      CHECK(std::sin(r * (c.c1 + c.c2)) == doctest::Approx(r).epsilon(1e-11));
    }
  }
}

TEST_CASE("forward_cp basics") {
  RandomStream rng(41);
  OrbitPoint z = orbit::base_point(2);
  auto radii = TwistRadii::from_twist(0.7);

  TangentPair rest{z, {CMat::Zero(3, 3)}, 1.0};
  auto [d1, d2] = forward_cp(rest, radii);
  CHECK((d1.matrix - z.matrix).norm() < 1e-14);
  CHECK((d2.matrix - z.matrix).norm() < 1e-14);

  // standard images lie on the unit affine circle V(t) + y around the
  // displayed center y
  int n = 2;
  double r = 0.8;
  TangentPair p{z, {vstd(n, r)}, 1.0};
  auto [a, b] = forward_cp(p, radii);
  CMat y = CMat::Zero(n + 1, n + 1);
  for (int k = 0; k < n - 1; ++k) y(k, k) = cplx(0, -1.0 / (n + 1));
  y(n - 1, n - 1) = cplx(0, (n - 1) / (2.0 * (n + 1)));
  y(n, n) = cplx(0, (n - 1) / (2.0 * (n + 1)));
  AlgebraElement va{a.matrix - y};
  AlgebraElement vb{b.matrix - y};
  CHECK(killing_norm(va) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(killing_norm(vb) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(orbit::is_antidiagonal(a, b).antidiagonal);

  TangentPair toobig{z, {vstd(n, 1.2)}, 1.0};
  CHECK_THROWS_AS(forward_cp(toobig, radii), std::invalid_argument);
}

TEST_CASE("inverse_cp recovers the fiber data") {
  RandomStream rng(42);
  auto radii0 = TwistRadii::from_twist(0.0);
  OrbitPoint a = orbit::random_point(2, rng);

  TangentPair diag = inverse_cp(a, a, radii0);
  CHECK((diag.base.matrix - a.matrix).norm() < 1e-12);
  CHECK(killing_norm(diag.vec) < 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    OrbitPoint p = orbit::random_point(2, rng);
    OrbitPoint q = orbit::random_point(2, rng);
    if (orbit::is_antidiagonal(p, q).overlap < 0.05) continue;
    TangentPair rec = inverse_cp(p, q, radii0);
    // untwisted: the base is the geodesic midpoint and jv is mu2
    auto [dist, mid] = orbit::distance_and_midpoint(p, q);
    (void)dist;
    CHECK((rec.base.matrix - mid.matrix).norm() < 1e-9);
    AlgebraElement mu2{0.5 * (p.matrix - q.matrix)};
    AlgebraElement expect_v{-(mid.matrix * mu2.m - mu2.m * mid.matrix)};
    CHECK((rec.vec - expect_v).m.norm() < 1e-9);
  }

  CVec e0(3), e1(3);
  e0 << 1, 0, 0;
  e1 << 0, 1, 0;
  CHECK_THROWS_AS(inverse_cp(orbit::from_line(e0), orbit::from_line(e1), radii0),
                  std::invalid_argument);
}

TEST_CASE("cp round trips") {
  RandomStream rng(43);
  for (int n : {1, 2, 3}) {
    for (double s : {0.0, 0.5, 2.0}) {
      auto radii = TwistRadii::from_twist(s);
      for (int trial = 0; trial < 8; ++trial) {
        TangentPair p = orbit::random_disc_pair(n, rng, 0.95);
        auto [a, b] = forward_cp(p, radii);
        TangentPair back = inverse_cp(a, b, radii);
        CHECK((back.base.matrix - p.base.matrix).norm() < 1e-9);
        CHECK((back.vec - p.vec).m.norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("forward_rp matches the displayed matrix") {
  for (int n : {1, 2, 3}) {
    OrbitPoint z = orbit::base_point(n);
    double r = 0.6;
    TangentPair p{z, {vstd(n, r)}, 1.0};
    OrbitPoint img = forward_rp(p);
    double fr = f_real(r) * r;
    double cs = std::cos(fr), sn = std::sin(fr);
    CMat expect = CMat::Zero(n + 1, n + 1);
    for (int k = 0; k < n - 1; ++k) expect(k, k) = cplx(0, -1.0 / (n + 1));
    expect(n - 1, n - 1) = cplx(0, (n * sn * sn - cs * cs) / (n + 1));
    expect(n, n) = cplx(0, (n * cs * cs - sn * sn) / (n + 1));
    expect(n - 1, n) = -0.5 * std::sin(2 * fr);
    expect(n, n - 1) = 0.5 * std::sin(2 * fr);
    CHECK((img.matrix - expect).norm() < 1e-12);
    CHECK(quadric_residual(img) > 0.01);
  }

  OrbitPoint z = orbit::base_point(2);
  TangentPair rest{z, {CMat::Zero(3, 3)}, 1.0};
  CHECK((forward_rp(rest).matrix - z.matrix).norm() == 0.0);
  TangentPair toobig{z, {vstd(2, 1.1)}, 1.0};
  CHECK_THROWS_AS(forward_rp(toobig), std::invalid_argument);

  // non-RP input is rejected
  RandomStream rng(44);
  TangentPair generic = orbit::random_disc_pair(2, rng);
  CHECK_THROWS_AS(forward_rp(generic), std::invalid_argument);
}

TEST_CASE("rp round trips and the moment-Hamiltonian relation") {
  RandomStream rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    TangentPair p = orbit::random_rp_disc_pair(2, rng, 0.95);
    OrbitPoint img = forward_rp(p);
    TangentPair back = inverse_rp(img);
    CHECK((back.base.matrix - p.base.matrix).norm() < 1e-9);
    CHECK((back.vec - p.vec).m.norm() < 1e-9);
    CHECK(orbit::rp_point_residual(back.base) < 1e-9);
    // |v| = |Re(image)|: the extended Hamiltonian is l |Re(p)| in these units
    CHECK(killing_norm(back.vec) ==
          doctest::Approx(killing_norm(orbit::real_part(img))).epsilon(1e-9));
  }

  RandomStream rng2(46);
  OrbitPoint rp = orbit::random_rp_point(2, rng2);
  TangentPair fixed = inverse_rp(rp);
  CHECK((fixed.base.matrix - rp.matrix).norm() < 1e-12);
  CHECK(killing_norm(fixed.vec) < 1e-12);

  CVec zq(3);
  zq << cplx(M_SQRT1_2, 0), cplx(0, M_SQRT1_2), 0;
  CHECK_THROWS_WITH_AS(inverse_rp(orbit::from_line(zq)),
                       doctest::Contains("no unique shortest geodesic"), std::invalid_argument);
}

TEST_CASE("radius-2 untwisted map is the rescaled family") {
  RandomStream rng(47);
  OrbitPoint x = orbit::random_point(2, rng);
  AlgebraElement u = orbit::random_tangent(x, rng, 1.4);  // |v| in (1, 2) is legal here
  TangentPair p{x, u, 2.0};
  auto [a, b] = forward_cp_disc2(p);
  TangentPair half{x, u * 0.5, 1.0};
  auto [a2, b2] = forward_cp(half, TwistRadii::from_twist(0.0));
  CHECK((a.matrix - a2.matrix).norm() == 0.0);
  CHECK((b.matrix - b2.matrix).norm() == 0.0);
  TangentPair toobig{x, u * 1.5, 2.0};
  CHECK_THROWS_AS(forward_cp_disc2(toobig), std::invalid_argument);
}

TEST_CASE("extended Hamiltonian") {
  RandomStream rng(48);
  auto radii0 = TwistRadii::from_twist(0.0);
  OrbitPoint a = orbit::random_point(2, rng);
  CHECK(extended_hamiltonian_cp(a, a, radii0) == doctest::Approx(0.0).epsilon(1e-12));

  for (double s : {0.0, 0.8}) {
    auto radii = TwistRadii::from_twist(s);
    double kappa = calib::constants(calib::Space::CP, 2).kappa;
    for (int trial = 0; trial < 20; ++trial) {
      OrbitPoint p = orbit::random_point(2, rng);
      OrbitPoint q = orbit::random_point(2, rng);
      if (orbit::is_antidiagonal(p, q).overlap < 0.05) continue;
      TangentPair rec = inverse_cp(p, q, radii);
      double speed = killing_norm(rec.vec);
      double direct = (2 * M_PI / kappa) * (std::sqrt(s * s + kappa * speed * speed) -
                                            std::abs(s));
      CHECK(std::abs(extended_hamiltonian_cp(p, q, radii) - direct) < 1e-8);
    }
    // defined and finite-difference-smooth across the anti-diagonal
    CVec e0(3), e1(3);
    e0 << 1, 0, 0;
    e1 << 0, 1, 0;
    OrbitPoint pa = orbit::from_line(e0);
    double h = 1e-6;
    OrbitPoint pb = orbit::from_line(e1);
    OrbitPoint pb_near = orbit::from_line([&] {
      CVec w(3);
      w << h, std::sqrt(1 - h * h), 0;
      return w;
    }());
    double v0 = extended_hamiltonian_cp(pa, pb, radii);
    double v1 = extended_hamiltonian_cp(pa, pb_near, radii);
    CHECK(std::isfinite(v0));
    CHECK(std::abs(v1 - v0) / h < 100.0);  // critical along the divisor: flat gradient
  }
}

TEST_CASE("cut table export") {
  std::string path = "cut_table_test.csv";
  write_cut_table(path, TwistRadii::from_twist(0.5), 11, 0.9);
  std::string body = io::read_file(path);
  CHECK(body.rfind("r,c1,c2,residual\n", 0) == 0);
  int lines = 0;
  for (char ch : body)
    if (ch == '\n') ++lines;
  CHECK(lines == 12);
  std::remove(path.c_str());
}
