#ifndef ORBITCAP_CUTMAPS_HPP_
#define ORBITCAP_CUTMAPS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "orbitcap/moments.hpp"
#include "orbitcap/orbit.hpp"

// The compactification symplectomorphisms and their scalar cut functions:
// untwisted CP^n, RP^n, and the magnetic CP^n family, plus the extended
// Hamiltonians that realize the cuts.
//
// The isometry-group orbits have codimension one in the disc bundle, so any
// complement of the orbit distribution is a line and isotropic for both
// forms; equivariance plus a commuting moment triangle then force the form
// equality.  The triangle is checked here, the form equality independently by
// the finite-difference pullback suites.

namespace orbitcap::cutmaps {

using liealg::AlgebraElement;
using orbit::OrbitPoint;
using orbit::TangentPair;

struct TwistRadii {
  double s = 0.0;
  double r1 = 0.5;
  double r2 = 0.5;

  // R1 = (sqrt(s^2+1)+s)/2, R2 = (sqrt(s^2+1)-s)/2; 4 R1 R2 = 1, R1-R2 = s.
  static TwistRadii from_twist(double s);
};

struct CutPair {
  double r = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // max norm of the two defining equations
};

// arcsin(r/2)/(2r) on (-2,2), continuous value 1/4 at r = 0; solves 2 sin(2cr) = r.
double c_untwisted(double r);

// arcsin(r)/(2r) on (-1,1), value 1/2 at r = 0; solves sin(2fr) = r.
double f_real(double r);

// Damped Newton with continuation in r from the closed-form r = 0 seeds
//   2 c1(0) = 1/(R1 + 1/2),  2 c2(0) = 1/(R2 + 1/2),
// converged to 1e-13 on
//   R1 sin(2 c1 r) + R2 sin(2 c2 r) = r
//   R1 cos(2 c1 r) - R2 cos(2 c2 r) = R1 - R2
// on the branch 0 < 2r(c1+c2) < pi.  Domain r in [0, 1).
CutPair solve_cut_pair(double r, const TwistRadii& radii);

// (x,v) -> (exp_x(+2 c1 j_xv), exp_x(-2 c2 j_xv)).  The doubled angle is the
// measured parameterization constant of the geodesic model; with it the
// moment triangle commutes against mu_product(R1,R2).
std::pair<OrbitPoint, OrbitPoint> forward_cp(const TangentPair& p, const TwistRadii& radii);

// Recovers (x,v) from a non-anti-diagonal pair: r from the Killing-norm
// matching |mu2|^2 = r^2 + s^2 (x,x), x at arc fraction c1/(c1+c2) from a on
// the shortest geodesic, jv = mu2 - s*x, v = -j(jv).
TangentPair inverse_cp(const OrbitPoint& a, const OrbitPoint& b, const TwistRadii& radii);

// (x,v) -> exp_x(+2 f(|v|) j_xv), image in CP^n minus the quadric
OrbitPoint forward_rp(const TangentPair& p);

// p -> (midpoint(p, p^T), -j Re(p)); requires p off the quadric
TangentPair inverse_rp(const OrbitPoint& p);

// The untwisted disc-radius-2 map, exposed through the scaling
// symplectomorphism (D_2, dlambda) ~ (D_1, 2 dlambda): equals the radius-1
// map at fiber v/2.  c_untwisted is its scalar profile.
std::pair<OrbitPoint, OrbitPoint> forward_cp_disc2(const TangentPair& p);

// 2*pi*(sqrt(r_rec^2 + s^2) - |s|) with r_rec^2 = |R1 a - R2 b|^2 - s^2 (x,x),
// defined on the whole product (r_rec = 1 on the anti-diagonal), smooth, and
// equal to the moment Hamiltonian composed with inverse_cp off the divisor.
double extended_hamiltonian_cp(const OrbitPoint& a, const OrbitPoint& b, const TwistRadii& radii);

// CSV export: r,c1,c2,residual rows over a uniform grid
void write_cut_table(const std::string& path, const TwistRadii& radii, int samples,
                     double r_max = 0.99);

}  // namespace orbitcap::cutmaps

#endif  // ORBITCAP_CUTMAPS_HPP_
