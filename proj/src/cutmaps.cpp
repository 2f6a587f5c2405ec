#include "orbitcap/cutmaps.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "orbitcap/calibration.hpp"

namespace orbitcap::cutmaps {

using liealg::bracket;
using liealg::killing_inner;
using liealg::killing_norm;

TwistRadii TwistRadii::from_twist(double s) {
  double w = std::sqrt(s * s + 1.0);
  return {s, 0.5 * (w + s), 0.5 * (w - s)};
}

double c_untwisted(double r) {
  if (std::abs(r) >= 2.0) throw std::invalid_argument("c_untwisted domain is (-2,2)");
  if (std::abs(r) < 1e-3) {
    // arcsin(x)/x = 1 + x^2/6 + 3x^4/40 with x = r/2
    double x2 = 0.25 * r * r;
    return 0.25 * (1.0 + x2 / 6.0 + 3.0 * x2 * x2 / 40.0);
  }
  return std::asin(0.5 * r) / (2.0 * r);
}

double f_real(double r) {
  if (std::abs(r) >= 1.0) throw std::invalid_argument("f_real domain is (-1,1)");
  if (std::abs(r) < 1e-3) {
    double x2 = r * r;
    return 0.5 * (1.0 + x2 / 6.0 + 3.0 * x2 * x2 / 40.0);
  }
  return std::asin(r) / (2.0 * r);
}

namespace {

struct CutEquations {
  double r1, r2, r;

  void eval(double c1, double c2, double& g1, double& g2) const {
    g1 = r1 * std::sin(2 * c1 * r) + r2 * std::sin(2 * c2 * r) - r;
    g2 = r1 * std::cos(2 * c1 * r) - r2 * std::cos(2 * c2 * r) - (r1 - r2);
  }

  // Jacobian in (c1, c2)
  void jac(double c1, double c2, double& a, double& b, double& c, double& d) const {
    a = 2 * r * r1 * std::cos(2 * c1 * r);
    b = 2 * r * r2 * std::cos(2 * c2 * r);
    c = -2 * r * r1 * std::sin(2 * c1 * r);
    d = 2 * r * r2 * std::sin(2 * c2 * r);
  }
};

// one damped Newton solve at fixed r from the supplied seed
bool newton_at(const CutEquations& eq, double& c1, double& c2, double tol) {
  double g1, g2;
  eq.eval(c1, c2, g1, g2);
  double res = std::abs(g1) + std::abs(g2);
  for (int it = 0; it < 50 && res > tol; ++it) {
    eq.eval(c1, c2, g1, g2);
    double a, b, c, d;
    eq.jac(c1, c2, a, b, c, d);
    double det = a * d - b * c;
    if (std::abs(det) < 1e-300) return false;
    double d1 = (d * g1 - b * g2) / det;
    double d2 = (-c * g1 + a * g2) / det;
    double step = 1.0;
    for (int halving = 0; halving < 30; ++halving) {
      double n1 = c1 - step * d1, n2 = c2 - step * d2;
      double h1, h2;
      eq.eval(n1, n2, h1, h2);
      double nres = std::abs(h1) + std::abs(h2);
      if (nres < res || nres < tol) {
        c1 = n1;
        c2 = n2;
        res = nres;
        break;
      }
      step *= 0.5;
    }
  }
  return res <= tol;
}

}  // namespace

CutPair solve_cut_pair(double r, const TwistRadii& radii) {
  r = std::abs(r);  // even in r
  if (r >= 1.0) throw std::invalid_argument("cut pair exists only for |v| < 1");
  const double r_cap = 1.0 - 1e-6;  // Jacobian degenerates at r = 1
  if (r > r_cap) throw std::invalid_argument("cut pair solver domain is capped at 1 - 1e-6");

  double c1 = 1.0 / (2.0 * radii.r1 + 1.0);
  double c2 = 1.0 / (2.0 * radii.r2 + 1.0);
  if (r == 0.0) return {0.0, c1, c2, 0.0};

  const double tol = Tolerances::active().newton;
  const int steps = std::max(1, static_cast<int>(std::ceil(r / 0.01)));
  for (int k = 1; k <= steps; ++k) {
    CutEquations eq{radii.r1, radii.r2, r * k / steps};
    if (!newton_at(eq, c1, c2, tol)) {
      double g1, g2;
      eq.eval(c1, c2, g1, g2);
      throw std::runtime_error("cut pair Newton did not converge, residual " +
                               std::to_string(std::abs(g1) + std::abs(g2)));
    }
  }
  CutEquations eq{radii.r1, radii.r2, r};
  double g1, g2;
  eq.eval(c1, c2, g1, g2);
  double branch = 2.0 * r * (c1 + c2);
  if (!(branch > 0.0 && branch < M_PI))
    throw std::runtime_error("cut pair left the branch 0 < 2r(c1+c2) < pi");
  return {r, c1, c2, std::max(std::abs(g1), std::abs(g2))};
}

std::pair<OrbitPoint, OrbitPoint> forward_cp(const TangentPair& p, const TwistRadii& radii) {
  double r = killing_norm(p.vec);
  if (r >= 1.0) throw std::invalid_argument("point lies outside the unit disc bundle");
  if (r < 1e-14) return {p.base, p.base};
  CutPair c = solve_cut_pair(r, radii);
  AlgebraElement jv = bracket({p.base.matrix}, p.vec);
  // the factor 2 is the measured parameterization constant of the geodesic
  // model; angles along the geodesic circle are 2*c*r
  OrbitPoint a = orbit::geodesic(p.base, jv, 2.0 * c.c1);
  OrbitPoint b = orbit::geodesic(p.base, jv, -2.0 * c.c2);
  return {a, b};
}

std::pair<OrbitPoint, OrbitPoint> forward_cp_disc2(const TangentPair& p) {
  if (killing_norm(p.vec) >= 2.0)
    throw std::invalid_argument("point lies outside the radius-2 disc bundle");
  TangentPair half{p.base, p.vec * 0.5, p.radius_bound};
  return forward_cp(half, TwistRadii::from_twist(0.0));
}

TangentPair inverse_cp(const OrbitPoint& a, const OrbitPoint& b, const TwistRadii& radii) {
  if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
  auto anti = orbit::is_antidiagonal(a, b);
  if (anti.antidiagonal)
    throw std::invalid_argument("no unique shortest geodesic (anti-diagonal pair)");

  AlgebraElement mu2 = {radii.r1 * a.matrix - radii.r2 * b.matrix};
  double m = killing_inner({a.matrix}, {a.matrix});  // = (x,x), orbit invariant
  double r2 = killing_inner(mu2, mu2) - radii.s * radii.s * m;
  double r = r2 > 0 ? std::sqrt(r2) : 0.0;
  if (r < 1e-9) return {a, {CMat::Zero(a.n + 1, a.n + 1)}, 1.0};
  if (r > 1.0 - 1e-6)
    throw std::invalid_argument("pair is too close to the anti-diagonal to invert");

  CutPair c = solve_cut_pair(r, radii);

  // x sits at arc fraction c1/(c1+c2) from a on the shortest geodesic
  cplx ov = a.line.dot(b.line);
  cplx phase = std::abs(ov) / ov;
  double omega = std::acos(std::min(1.0, std::abs(ov)));  // principal angle
  double alpha = c.c1 / (c.c1 + c.c2);
  CVec zb = phase * b.line;
  CVec zx = (std::sin((1.0 - alpha) * omega) * a.line + std::sin(alpha * omega) * zb) /
            std::sin(omega);
  OrbitPoint x = orbit::from_line(zx);

  AlgebraElement jv = orbit::tangent_project(x, mu2 - radii.s * AlgebraElement{x.matrix});
  AlgebraElement v = AlgebraElement{-(x.matrix * jv.m - jv.m * x.matrix)};
  return {x, v, 1.0};
}

OrbitPoint forward_rp(const TangentPair& p) {
  if (orbit::rp_tangent_residual(p.base, p.vec) > Tolerances::active().tangency)
    throw std::invalid_argument("not an RP^n tangent pair");
  double r = killing_norm(p.vec);
  if (r >= 1.0) throw std::invalid_argument("point lies outside the unit disc bundle");
  if (r < 1e-14) return p.base;
  AlgebraElement jv = bracket({p.base.matrix}, p.vec);
  return orbit::geodesic(p.base, jv, 2.0 * f_real(r));
}

TangentPair inverse_rp(const OrbitPoint& p) {
  if (quadric_residual(p) < Tolerances::active().quadric)
    throw std::invalid_argument("no unique shortest geodesic (quadric point)");
  OrbitPoint ip = orbit::involution(p);
  if ((p.matrix - ip.matrix).norm() < 1e-12)
    return {p, {CMat::Zero(p.n + 1, p.n + 1)}, 1.0};
  auto [dist, mid] = orbit::distance_and_midpoint(p, ip);
  (void)dist;
  AlgebraElement re = orbit::real_part(p);
  AlgebraElement v = {-(mid.matrix * re.m - re.m * mid.matrix)};
  return {mid, v, 1.0};
}

double extended_hamiltonian_cp(const OrbitPoint& a, const OrbitPoint& b,
                               const TwistRadii& radii) {
  AlgebraElement mu2 = {radii.r1 * a.matrix - radii.r2 * b.matrix};
  double m = killing_inner({a.matrix}, {a.matrix});
  double q = killing_inner(mu2, mu2) - radii.s * radii.s * m;
  if (q < 0) q = 0;
  double kappa = calib::constants(calib::Space::CP, a.n).kappa;
  return (2.0 * M_PI / kappa) *
         (std::sqrt(radii.s * radii.s + kappa * q) - std::abs(radii.s));
}

void write_cut_table(const std::string& path, const TwistRadii& radii, int samples,
                     double r_max) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << std::setprecision(17);
  out << "r,c1,c2,residual\n";
  for (int k = 0; k < samples; ++k) {
    double r = r_max * k / (samples - 1);
    CutPair c = solve_cut_pair(r, radii);
    out << r << "," << c.c1 << "," << c.c2 << "," << c.residual << "\n";
  }
}

}  // namespace orbitcap::cutmaps
