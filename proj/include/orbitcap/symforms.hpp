#ifndef ORBITCAP_SYMFORMS_HPP_
#define ORBITCAP_SYMFORMS_HPP_

#include <functional>
#include <utility>

#include "orbitcap/orbit.hpp"

// Numerical evaluation of the canonical 1-form, d(lambda) through the
// horizontal/vertical splitting, the Fubini-Study form, the twisted form
// omega_s = d(lambda) - s pi* omega_FS, and central finite differences for
// pullback checks.

namespace orbitcap::symforms {

using liealg::AlgebraElement;
using orbit::OrbitPoint;
using orbit::TangentPair;

// A tangent vector of the tangent bundle at (x,v): hdot is the base component
// (tangent at x), vdot the ambient derivative of the fiber along a curve
// keeping v(t) tangent at x(t).  Valid vdot satisfy
//   vdot - P(vdot) = normal part of dP(hdot) v,
// which make_variation and the lifts guarantee.  The connection part is
// tangent_project(x, vdot).
struct TangentOfTangent {
  TangentPair at;
  AlgebraElement hdot;
  AlgebraElement vdot;
};

// Variation represented by x(t) = retract(x + t h), v(t) = P_{x(t)}(v + t w)
// with the exact ambient fiber derivative vdot = P(w) + dP(h) v, where
// dP(h) v = -[h,[x,v]] - [x,[h,v]].
TangentOfTangent make_variation(const TangentPair& p, const AlgebraElement& h_raw,
                                const AlgebraElement& w_raw);

// A^V: fiber shift, K = A, dpi = 0.
TangentOfTangent vertical_lift(const TangentPair& p, const AlgebraElement& a);
// B^H: base motion with parallel fiber, K = 0, dpi = B.
TangentOfTangent horizontal_lift(const TangentPair& p, const AlgebraElement& b);

// A curve through xi.at with derivative exactly (hdot, vdot); used by the
// finite-difference pullbacks so that pointwise forms and differentials see
// the same variation.
TangentPair variation_curve(const TangentOfTangent& xi, double t);

double canonical_one_form(const TangentPair& p, const TangentOfTangent& xi);

// d(lambda)(xi,eta) = g(K xi, dpi eta) - g(dpi xi, K eta); the sign makes
// d(lambda)(A^V, B^H) = g(A,B).
double two_form(const TangentPair& p, const TangentOfTangent& xi, const TangentOfTangent& eta);

// omega_FS(u,w) = g(j u, w) = ([x,u], w)
double fubini_study(const OrbitPoint& x, const AlgebraElement& u, const AlgebraElement& w);

double twisted_form(const TangentPair& p, double s, const TangentOfTangent& xi,
                    const TangentOfTangent& eta);

// The split symplectic form on the pair target, oriented so that the diagonal
// group action has moment R1*a - R2*b under the dH = -i_X omega convention
// used throughout: evaluates R2*omega_FS at the second factor minus
// R1*omega_FS at the first.  This is the form the cut map pulls back to the
// twisted form; see the orientation test in test_symforms.
double split_product_form(const OrbitPoint& a, const AlgebraElement& ua,
                          const AlgebraElement& wa, const OrbitPoint& b,
                          const AlgebraElement& ub, const AlgebraElement& wb, double r1,
                          double r2);

// Target form of the RP compactification with the same orientation rule (the
// SO-action moment is Re): minus omega_FS.
double target_form_rp(const OrbitPoint& p, const AlgebraElement& u, const AlgebraElement& w);

// The lift of the infinitesimal group action to the tangent bundle:
// hdot = [a, x], vdot = [a, v].
TangentOfTangent group_variation(const TangentPair& p, const AlgebraElement& a);

// central differences with retraction to the constraint sets, error O(h^2)
AlgebraElement differential(const std::function<OrbitPoint(const OrbitPoint&)>& map,
                            const OrbitPoint& x, const AlgebraElement& u, double h);

// d of a point-pair-valued map on the disc bundle along a variation; results
// are tangent vectors at the two image points.
std::pair<AlgebraElement, AlgebraElement> differential_pair(
    const std::function<std::pair<OrbitPoint, OrbitPoint>(const TangentPair&)>& map,
    const TangentPair& p, const TangentOfTangent& xi, double h);

AlgebraElement differential_point(const std::function<OrbitPoint(const TangentPair&)>& map,
                                  const TangentPair& p, const TangentOfTangent& xi, double h);

}  // namespace orbitcap::symforms

#endif  // ORBITCAP_SYMFORMS_HPP_
