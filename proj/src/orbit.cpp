#include "orbitcap/orbit.hpp"

#include <cmath>
#include <stdexcept>

#include "orbitcap/calibration.hpp"

namespace orbitcap::orbit {

namespace {

cplx overlap(const OrbitPoint& a, const OrbitPoint& b) { return a.line.dot(b.line); }

}  // namespace

OrbitPoint base_point(int n) {
  if (n < 1) throw std::invalid_argument("dimension index must be >= 1");
  CVec z = CVec::Zero(n + 1);
  z(n) = 1.0;
  return from_line(z);
}

OrbitPoint from_line(const CVec& z) {
  const int d = static_cast<int>(z.size());
  if (d < 2) throw std::invalid_argument("line vector too short");
  double nrm = z.norm();
  if (nrm < 1e-14) throw std::invalid_argument("zero line vector");
  OrbitPoint p;
  p.n = d - 1;
  p.line = z / nrm;
  p.matrix = cplx(0, 1) * (p.line * p.line.adjoint() - CMat::Identity(d, d) / double(d));
  return p;
}

CVec line_from_matrix(const CMat& m) {
  const int d = static_cast<int>(m.rows());
  CMat proj = cplx(0, -1) * m + CMat::Identity(d, d) / double(d);  // = z z* on the orbit
  int best = 0;
  double best_diag = proj(0, 0).real();
  for (int k = 1; k < d; ++k) {
    if (proj(k, k).real() > best_diag) {
      best_diag = proj(k, k).real();
      best = k;
    }
  }
  if (best_diag <= 0) throw std::invalid_argument("matrix is not near the orbit");
  CVec z = proj.col(best) / std::sqrt(best_diag);
  // gauge: entry `best` real positive
  cplx ph = z(best) / std::abs(z(best));
  z /= ph;
  return z / z.norm();
}

OrbitPoint adjoint_point(const GroupElement& g, const OrbitPoint& p) {
  OrbitPoint q;
  q.n = p.n;
  q.matrix = g.m * p.matrix * g.m.adjoint();
  q.line = g.m * p.line;
  q.line /= q.line.norm();
  return q;
}

AlgebraElement complex_structure(const OrbitPoint& x, const AlgebraElement& v) {
  if (tangency_residual(x, v) > Tolerances::active().tangency)
    throw std::invalid_argument("input is not tangent at the given point");
  return {x.matrix * v.m - v.m * x.matrix};
}

AlgebraElement tangent_project(const OrbitPoint& x, const AlgebraElement& w) {
  CMat xw = x.matrix * w.m - w.m * x.matrix;
  return {-(x.matrix * xw - xw * x.matrix)};
}

OrbitPoint geodesic(const OrbitPoint& x, const AlgebraElement& u, double t) {
  if (tangency_residual(x, u) > Tolerances::active().tangency)
    throw std::invalid_argument("geodesic direction is not tangent");
  AlgebraElement gen = {x.matrix * u.m - u.m * x.matrix};
  GroupElement g = liealg::group_exp(gen * t);
  return adjoint_point(g, x);
}

AntidiagonalCheck is_antidiagonal(const OrbitPoint& a, const OrbitPoint& b) {
  double ov = std::abs(overlap(a, b));
  return {ov < Tolerances::active().antidiagonal, ov};
}

std::pair<double, OrbitPoint> distance_and_midpoint(const OrbitPoint& a, const OrbitPoint& b) {
  if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
  cplx ov = overlap(a, b);
  if (std::abs(ov) < Tolerances::active().antidiagonal)
    throw std::invalid_argument("no unique shortest geodesic (anti-diagonal pair)");
  double c = std::min(1.0, std::abs(ov));
  double l = calib::constants(calib::Space::CP, a.n).prime_length;
  double dist = (l / M_PI) * std::acos(c);
  // phase chosen so <z_a, e^{i phi} z_b> is real positive: minor-arc midpoint
  cplx phase = (std::abs(ov) > 0) ? std::abs(ov) / ov : cplx(1, 0);
  CVec zm = a.line + phase * b.line;
  return {dist, from_line(zm)};
}

OrbitPoint involution(const OrbitPoint& p) {
  OrbitPoint q;
  q.n = p.n;
  q.matrix = p.matrix.transpose();
  q.line = p.line.conjugate();
  return q;
}

double quadric_residual(const OrbitPoint& p) {
  cplx s = 0.0;
  for (Eigen::Index k = 0; k < p.line.size(); ++k) s += p.line(k) * p.line(k);
  return std::abs(s);
}

AlgebraElement real_part(const OrbitPoint& p) { return {p.matrix.real().cast<cplx>()}; }

double on_orbit_residual(const OrbitPoint& p) {
  const int d = p.n + 1;
  CMat i1 = p.matrix + cplx(0, 1.0 / d) * CMat::Identity(d, d);
  CMat i2 = p.matrix - cplx(0, double(p.n) / d) * CMat::Identity(d, d);
  return (i1 * i2).norm();
}

double bridge_residual(const OrbitPoint& p) {
  const int d = p.n + 1;
  CMat m = cplx(0, 1) * (p.line * p.line.adjoint() - CMat::Identity(d, d) / double(d));
  return (m - p.matrix).norm();
}

double tangency_residual(const OrbitPoint& x, const AlgebraElement& v) {
  CMat xv = x.matrix * v.m - v.m * x.matrix;
  CMat xxv = x.matrix * xv - xv * x.matrix;
  return (xxv + v.m).norm();
}

double rp_point_residual(const OrbitPoint& p) { return (p.matrix - p.matrix.transpose()).norm(); }

double rp_tangent_residual(const OrbitPoint& x, const AlgebraElement& v) {
  double r = tangency_residual(x, v);
  r = std::max(r, (v.m - v.m.transpose()).norm());   // imaginary-symmetric fiber
  r = std::max(r, v.m.real().norm());
  r = std::max(r, rp_point_residual(x));
  return r;
}

OrbitPoint random_point(int n, RandomStream& rng) {
  CVec z(n + 1);
  for (int k = 0; k <= n; ++k) z(k) = rng.complex_gaussian();
  return from_line(z);
}

OrbitPoint random_rp_point(int n, RandomStream& rng) {
  CVec z(n + 1);
  for (int k = 0; k <= n; ++k) z(k) = cplx(rng.gaussian(), 0.0);
  return from_line(z);
}

AlgebraElement random_tangent(const OrbitPoint& x, RandomStream& rng, double norm) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    AlgebraElement w = liealg::sample_algebra(liealg::SampleKind::algebra_su, x.n, rng);
    AlgebraElement v = tangent_project(x, w);
    double nv = liealg::killing_norm(v);
    if (nv > 1e-8) return v * (norm / nv);
  }
  throw std::runtime_error("failed to sample a tangent direction");
}

AlgebraElement random_rp_tangent(const OrbitPoint& x, RandomStream& rng, double norm) {
  // [a, x] with a in so(n+1) is tangent and imaginary-symmetric at symmetric x
  for (int attempt = 0; attempt < 16; ++attempt) {
    AlgebraElement a = liealg::sample_algebra(liealg::SampleKind::algebra_so, x.n, rng);
    AlgebraElement v = {a.m * x.matrix - x.matrix * a.m};
    double nv = liealg::killing_norm(v);
    if (nv > 1e-8) return v * (norm / nv);
  }
  throw std::runtime_error("failed to sample an RP tangent direction");
}

TangentPair random_disc_pair(int n, RandomStream& rng, double rmax) {
  OrbitPoint x = random_point(n, rng);
  double r = rmax * (0.05 + 0.9 * rng.uniform());
  return {x, random_tangent(x, rng, r), 1.0};
}

TangentPair random_rp_disc_pair(int n, RandomStream& rng, double rmax) {
  OrbitPoint x = random_rp_point(n, rng);
  double r = rmax * (0.05 + 0.9 * rng.uniform());
  return {x, random_rp_tangent(x, rng, r), 1.0};
}

}  // namespace orbitcap::orbit
