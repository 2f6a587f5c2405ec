#include "orbitcap/symforms.hpp"

#include <stdexcept>

namespace orbitcap::symforms {

using liealg::bracket;
using liealg::killing_inner;
using orbit::tangent_project;

namespace {

OrbitPoint retract_point(const CMat& m) { return orbit::from_line(orbit::line_from_matrix(m)); }

// derivative of w -> -ad_x^2 w in base direction h, applied to the fiber:
// dP(h) v = -[h,[x,v]] - [x,[h,v]]
AlgebraElement d_projection(const TangentPair& p, const AlgebraElement& h) {
  const CMat& x = p.base.matrix;
  const CMat& v = p.vec.m;
  CMat xv = x * v - v * x;
  CMat hv = h.m * v - v * h.m;
  return {-(h.m * xv - xv * h.m) - (x * hv - hv * x)};
}

}  // namespace

TangentOfTangent make_variation(const TangentPair& p, const AlgebraElement& h_raw,
                                const AlgebraElement& w_raw) {
  TangentOfTangent xi;
  xi.at = p;
  xi.hdot = tangent_project(p.base, h_raw);
  xi.vdot = tangent_project(p.base, w_raw) + d_projection(p, xi.hdot);
  return xi;
}

TangentOfTangent vertical_lift(const TangentPair& p, const AlgebraElement& a) {
  TangentOfTangent xi;
  xi.at = p;
  xi.hdot = {CMat::Zero(p.base.n + 1, p.base.n + 1)};
  xi.vdot = tangent_project(p.base, a);
  return xi;
}

TangentOfTangent horizontal_lift(const TangentPair& p, const AlgebraElement& b) {
  // with w = [x,[h,v]] the connection part P(vdot) vanishes identically
  TangentOfTangent xi;
  xi.at = p;
  xi.hdot = tangent_project(p.base, b);
  const CMat& x = p.base.matrix;
  CMat hv = xi.hdot.m * p.vec.m - p.vec.m * xi.hdot.m;
  xi.vdot = AlgebraElement{x * hv - hv * x} + d_projection(p, xi.hdot);
  return xi;
}

TangentPair variation_curve(const TangentOfTangent& xi, double t) {
  // v(t) = P_{x(t)}(v + t w) with w = vdot - dP(hdot) v differentiates to
  // exactly (hdot, vdot) for valid vdot
  const TangentPair& p = xi.at;
  AlgebraElement w = xi.vdot - d_projection(p, xi.hdot);
  OrbitPoint xt = retract_point(p.base.matrix + t * xi.hdot.m);
  AlgebraElement vt = tangent_project(xt, {p.vec.m + t * w.m});
  return {xt, vt, p.radius_bound};
}

double canonical_one_form(const TangentPair& p, const TangentOfTangent& xi) {
  if ((xi.at.base.matrix - p.base.matrix).norm() > 1e-9)
    throw std::invalid_argument("variation is based at a different point");
  return killing_inner(p.vec, xi.hdot);
}

double two_form(const TangentPair& p, const TangentOfTangent& xi, const TangentOfTangent& eta) {
  if ((xi.at.base.matrix - p.base.matrix).norm() > 1e-9 ||
      (eta.at.base.matrix - p.base.matrix).norm() > 1e-9)
    throw std::invalid_argument("variation is based at a different point");
  AlgebraElement kxi = tangent_project(p.base, xi.vdot);
  AlgebraElement keta = tangent_project(p.base, eta.vdot);
  return killing_inner(kxi, eta.hdot) - killing_inner(xi.hdot, keta);
}

double fubini_study(const OrbitPoint& x, const AlgebraElement& u, const AlgebraElement& w) {
  const Tolerances& tol = Tolerances::active();
  if (orbit::tangency_residual(x, u) > tol.tangency ||
      orbit::tangency_residual(x, w) > tol.tangency)
    throw std::invalid_argument("fubini_study arguments must be tangent");
  return killing_inner(bracket({x.matrix}, u), w);
}

double twisted_form(const TangentPair& p, double s, const TangentOfTangent& xi,
                    const TangentOfTangent& eta) {
  double val = two_form(p, xi, eta);
  if (s != 0.0) val -= s * fubini_study(p.base, xi.hdot, eta.hdot);
  return val;
}

double split_product_form(const OrbitPoint& a, const AlgebraElement& ua,
                          const AlgebraElement& wa, const OrbitPoint& b,
                          const AlgebraElement& ub, const AlgebraElement& wb, double r1,
                          double r2) {
  return r2 * fubini_study(b, ub, wb) - r1 * fubini_study(a, ua, wa);
}

double target_form_rp(const OrbitPoint& p, const AlgebraElement& u, const AlgebraElement& w) {
  return -fubini_study(p, u, w);
}

TangentOfTangent group_variation(const TangentPair& p, const AlgebraElement& a) {
  TangentOfTangent xi;
  xi.at = p;
  xi.hdot = {a.m * p.base.matrix - p.base.matrix * a.m};
  xi.vdot = {a.m * p.vec.m - p.vec.m * a.m};
  return xi;
}

AlgebraElement differential(const std::function<OrbitPoint(const OrbitPoint&)>& map,
                            const OrbitPoint& x, const AlgebraElement& u, double h) {
  if (h <= 0) throw std::invalid_argument("step must be positive");
  OrbitPoint xp = retract_point(x.matrix + h * u.m);
  OrbitPoint xm = retract_point(x.matrix - h * u.m);
  CMat diff = (map(xp).matrix - map(xm).matrix) / (2.0 * h);
  return tangent_project(map(x), {diff});
}

std::pair<AlgebraElement, AlgebraElement> differential_pair(
    const std::function<std::pair<OrbitPoint, OrbitPoint>(const TangentPair&)>& map,
    const TangentPair& p, const TangentOfTangent& xi, double h) {
  auto fp = map(variation_curve(xi, h));
  auto fm = map(variation_curve(xi, -h));
  auto f0 = map(p);
  CMat da = (fp.first.matrix - fm.first.matrix) / (2.0 * h);
  CMat db = (fp.second.matrix - fm.second.matrix) / (2.0 * h);
  return {tangent_project(f0.first, {da}), tangent_project(f0.second, {db})};
}

AlgebraElement differential_point(const std::function<OrbitPoint(const TangentPair&)>& map,
                                  const TangentPair& p, const TangentOfTangent& xi, double h) {
  CMat d = (map(variation_curve(xi, h)).matrix - map(variation_curve(xi, -h)).matrix) / (2.0 * h);
  return tangent_project(map(p), {d});
}

}  // namespace orbitcap::symforms
