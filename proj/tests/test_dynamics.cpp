#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "orbitcap/dynamics.hpp"
#include "orbitcap/io.hpp"
#include "orbitcap/moments.hpp"

using namespace orbitcap;
using namespace orbitcap::dynamics;
using liealg::AlgebraElement;
using liealg::killing_inner;
using liealg::killing_norm;
using orbit::OrbitPoint;
using orbit::TangentPair;

TEST_CASE("kinetic energy") {
  RandomStream rng(51);
  OrbitPoint x = orbit::random_point(2, rng);
  TangentPair rest{x, {CMat::Zero(3, 3)}, 1.0};
  CHECK(kinetic_energy(rest) == 0.0);
  double r = 0.83;
  TangentPair p{x, orbit::random_tangent(x, rng, r), 1.0};
  CHECK(kinetic_energy(p) == doctest::Approx(r * r / 2).epsilon(1e-12));

  liealg::GroupElement g = liealg::sample_group(liealg::SampleKind::group_su, 2, rng);
  TangentPair gp{orbit::adjoint_point(g, p.base), liealg::adjoint(g, p.vec), 1.0};
  CHECK(std::abs(kinetic_energy(gp) - kinetic_energy(p)) < 1e-12);
}

TEST_CASE("magnetic rhs") {
  RandomStream rng(52);
  TangentPair p = orbit::random_disc_pair(2, rng, 0.8);

  // s = 0: geodesic equation, the covariant fiber derivative vanishes
  auto geo = magnetic_rhs(p, 0.0);
  CHECK((geo.hdot - p.vec).m.norm() == 0.0);
  CHECK(orbit::tangent_project(p.base, geo.vdot).m.norm() < 1e-12);

  // speed is preserved: (v, vdot) = 0
  for (double s : {0.0, 1.0, 2.0}) {
    auto rhs = magnetic_rhs(p, s);
    CHECK(std::abs(killing_inner(p.vec, rhs.vdot)) < 1e-10);
    // the covariant part is s * j(v)
    AlgebraElement jv = orbit::complex_structure(p.base, p.vec);
    CHECK((orbit::tangent_project(p.base, rhs.vdot) - jv * s).m.norm() < 1e-10);
  }

  // defining relation dE = -i_X omega_s against random variations
  for (double s : {0.0, 1.5}) {
    double resid = hamiltonian_relation_residual(p, s, rng);
    CHECK(resid < 1e-6);
  }
}

TEST_CASE("integrate matches the closed-form geodesic") {
  RandomStream rng(53);
  OrbitPoint x = orbit::random_point(2, rng);
  AlgebraElement u = orbit::random_tangent(x, rng, 0.7);
  TangentPair p{x, u, 1.0};
  auto rec = integrate(p, 0.0, 1.0, 1e-3);
  OrbitPoint expect = orbit::geodesic(x, u, 1.0);
  CHECK((rec.states.back().base.matrix - expect.matrix).norm() < 1e-7);
  CHECK(rec.energy_drift() < 1e-8);
  CHECK(rec.moment_drift() < 1e-8);
  // stored states sit on the constraint sets
  for (size_t k = 0; k < rec.states.size(); k += 100) {
    CHECK(orbit::on_orbit_residual(rec.states[k].base) < 1e-7);
    CHECK(orbit::tangency_residual(rec.states[k].base, rec.states[k].vec) < 1e-7);
  }

  // time reversal at s = 0: flip the fiber and integrate back
  TangentPair endrev{rec.states.back().base, -rec.states.back().vec, 1.0};
  auto backrec = integrate(endrev, 0.0, 1.0, 1e-3);
  CHECK((backrec.states.back().base.matrix - x.matrix).norm() < 1e-6);
  CHECK((backrec.states.back().vec.m + u.m).norm() < 1e-6);
}

TEST_CASE("integrator aborts on runaway constraint drift") {
  RandomStream rng(60);
  TangentPair p = orbit::random_disc_pair(2, rng, 0.9);
  CHECK_THROWS_AS(integrate(p, 0.0, 50.0, 5.0), std::runtime_error);
  CHECK_THROWS_AS(integrate(p, 0.0, -1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(integrate(p, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("moment conservation along magnetic flow") {
  RandomStream rng(54);
  for (double s : {0.0, 1.0, 2.0}) {
    TangentPair p = orbit::random_disc_pair(2, rng, 0.9);
    auto rec = integrate(p, s, 1.0, 1e-3);
    double worst = 0;
    AlgebraElement mu0 = moments::mu_tangent(rec.states.front(), s).value;
    for (const auto& st : rec.states)
      worst = std::max(worst, (moments::mu_tangent(st, s).value - mu0).m.norm());
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("measured periods follow the closed form") {
  RandomStream rng(55);
  OrbitPoint x = orbit::random_point(2, rng);

  // unit speed, no twist: the period is the calibrated prime length
  TangentPair unit{x, orbit::random_tangent(x, rng, 1.0), 1.0};
  double t_unit = measured_period(unit, 0.0);
  double l = calib::constants(calib::Space::CP, 2).prime_length;
  REQUIRE(l > 1.0);
  CHECK(std::abs(t_unit - l) / l < 1e-5);

  // kappa = 1 normalization: s = sqrt(3), |v| = 1 gives period pi
  double t_s3 = measured_period(unit, std::sqrt(3.0));
  CHECK(std::abs(t_s3 - M_PI) / M_PI < 1e-5);

  for (double speed : {0.25, 1.0}) {
    TangentPair p{x, orbit::random_tangent(x, rng, speed), 1.0};
    for (double s : {0.0, 2.0}) {
      double t = measured_period(p, s);
      double expect = predicted_period(s, speed, 2);
      CHECK(std::abs(t - expect) / expect < 1e-5);
    }
  }
}

TEST_CASE("magnetic flow is totally periodic") {
  RandomStream rng(59);
  double worst = 0;
  for (double s : {0.0, 1.0, 2.0}) {
    for (int k = 0; k < 20; ++k) {
      TangentPair p = orbit::random_disc_pair(2, rng, 0.95);
      double t = measured_period(p, s);  // throws if no return below 1e-6
      auto rec = integrate(p, s, t, t / 2048.0);
      double resid = std::sqrt((rec.states.back().base.matrix - p.base.matrix).squaredNorm() +
                               (rec.states.back().vec.m - p.vec.m).squaredNorm());
      worst = std::max(worst, resid);
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("magnetic flow is confined to a totally geodesic sphere") {
  RandomStream rng(56);
  TangentPair p = orbit::random_disc_pair(2, rng, 0.8);
  auto rec = integrate(p, 1.0, 3.0, 1e-3);
  // the line stays in the 2-plane spanned by the initial line and its velocity
  CVec z0 = rec.states.front().base.line;
  CVec z1;
  double best = 0;
  for (const auto& st : rec.states) {
    CVec cand = st.base.line - z0.dot(st.base.line) * z0;
    if (cand.norm() > best) {
      best = cand.norm();
      z1 = cand / cand.norm();
    }
  }
  REQUIRE(best > 1e-3);
  double worst = 0;
  for (const auto& st : rec.states) {
    CVec z = st.base.line;
    CVec resid = z - z0.dot(z) * z0 - z1.dot(z) * z1;
    worst = std::max(worst, resid.norm());
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("rp initial data stays symmetric under geodesic flow") {
  RandomStream rng(57);
  TangentPair p = orbit::random_rp_disc_pair(2, rng, 0.8);
  auto rec = integrate(p, 0.0, 2.0, 1e-3);
  double worst = 0;
  for (const auto& st : rec.states) worst = std::max(worst, orbit::rp_point_residual(st.base));
  CHECK(worst < 1e-7);
}

TEST_CASE("trajectory csv") {
  RandomStream rng(58);
  TangentPair p = orbit::random_disc_pair(1, rng, 0.5);
  auto rec = integrate(p, 0.5, 0.05, 1e-3);
  write_trajectory_csv("traj_test.csv", rec);
  std::string body = io::read_file("traj_test.csv");
  CHECK(body.rfind("t,z0_re,z0_im", 0) == 0);
  CHECK(body.find("energy,moment_norm") != std::string::npos);
  write_trajectory_csv("traj_test2.csv", rec);
  CHECK(io::read_file("traj_test2.csv") == body);  // deterministic bytes
  std::remove("traj_test.csv");
  std::remove("traj_test2.csv");
}
