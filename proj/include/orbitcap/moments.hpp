#ifndef ORBITCAP_MOMENTS_HPP_
#define ORBITCAP_MOMENTS_HPP_

#include "orbitcap/orbit.hpp"

// The moment maps of the group actions on the (twisted) tangent bundle, the
// orbit product, and the orbit itself, plus the commuting-triangle residual
// the cut maps are certified against.

namespace orbitcap::moments {

using liealg::AlgebraElement;
using orbit::OrbitPoint;
using orbit::TangentPair;

enum class GroupTag { SU, SO };

struct MomentValue {
  AlgebraElement value;
  GroupTag tag = GroupTag::SU;
};

// (x,v) |-> [x,v] + s*x.  This is the sign that commutes with mu_product
// under the cut map (forced by F(x,0) = (x,x)) and the one conserved along
// the magnetic flow; see test_moments for both checks.
MomentValue mu_tangent(const TangentPair& p, double s);

// (a,b) |-> R1*a - R2*b;  R1 = R2 = 1 is the untwisted diagonal action.
MomentValue mu_product(const OrbitPoint& a, const OrbitPoint& b, double r1, double r2);

// a |-> Re(a) in so(n+1)
MomentValue mu_real(const OrbitPoint& a);

// Killing norm of mu_tangent(p,s) - image
double triangle_residual(const TangentPair& p, const MomentValue& image, double s);

}  // namespace orbitcap::moments

#endif  // ORBITCAP_MOMENTS_HPP_
