#ifndef ORBITCAP_ORBIT_HPP_
#define ORBITCAP_ORBIT_HPP_

#include <utility>

#include "orbitcap/liealg.hpp"

// The adjoint-orbit model of CP^n with base point
//   Z = diag(-i,...,-i, ni)/(n+1),
// kept in a dual representation: the skew-Hermitian matrix and a homogeneous
// unit line vector z with  matrix = i(zz* - I/(n+1)).  RP^n sits inside as the
// suborbit of symmetric matrices (real line vectors).

namespace orbitcap::orbit {

using liealg::AlgebraElement;
using liealg::GroupElement;

struct OrbitPoint {
  int n = 0;
  CMat matrix;
  CVec line;
};

struct TangentPair {
  OrbitPoint base;
  AlgebraElement vec;
  double radius_bound = 1.0;
};

OrbitPoint base_point(int n);

// matrix = i(zz* - I/(n+1)); phase of z is immaterial for the point.
OrbitPoint from_line(const CVec& z);

// Canonical line extraction: the column of zz* = -i*matrix + I/(n+1) with the
// largest diagonal entry, gauge-fixed so that entry is real positive.
CVec line_from_matrix(const CMat& m);

OrbitPoint adjoint_point(const GroupElement& g, const OrbitPoint& p);

// j_x v := [x, v]
AlgebraElement complex_structure(const OrbitPoint& x, const AlgebraElement& v);

// Orthogonal projection onto T_x O, realized as -ad_x^2 (j^2 = -1 on tangents,
// zero on the stabilizer).
AlgebraElement tangent_project(const OrbitPoint& x, const AlgebraElement& w);

// Geodesic with gamma(0) = x, gamma'(0) = u:  Ad_{exp(t[x,u])}(x).
// The line representative is transported exactly: z(t) = exp(t[x,u]) z.
OrbitPoint geodesic(const OrbitPoint& x, const AlgebraElement& u, double t);

struct AntidiagonalCheck {
  bool antidiagonal = false;
  double overlap = 0.0;  // |<z_a, z_b>|
};
AntidiagonalCheck is_antidiagonal(const OrbitPoint& a, const OrbitPoint& b);

// Distance from the principal angle, scaled by the measured metric constant
// (l_measured / pi); midpoint of the unique shortest geodesic via the line
// model.  Throws on anti-diagonal input.
std::pair<double, OrbitPoint> distance_and_midpoint(const OrbitPoint& a, const OrbitPoint& b);

// p -> p^T; fixes the RP^n suborbit, antiholomorphic.
OrbitPoint involution(const OrbitPoint& p);

// | sum_k z_k^2 |, phase invariant; zero exactly on the quadric divisor.
double quadric_residual(const OrbitPoint& p);

// entrywise real part, landing in so(n+1); vanishes on the RP^n suborbit.
AlgebraElement real_part(const OrbitPoint& p);

// residuals for the stated invariants
double on_orbit_residual(const OrbitPoint& p);
double bridge_residual(const OrbitPoint& p);
double tangency_residual(const OrbitPoint& x, const AlgebraElement& v);
double rp_point_residual(const OrbitPoint& p);                       // ||m - m^T||
double rp_tangent_residual(const OrbitPoint& x, const AlgebraElement& v);

// seeded sampling used throughout the test surface
OrbitPoint random_point(int n, RandomStream& rng);
OrbitPoint random_rp_point(int n, RandomStream& rng);
AlgebraElement random_tangent(const OrbitPoint& x, RandomStream& rng, double norm);
AlgebraElement random_rp_tangent(const OrbitPoint& x, RandomStream& rng, double norm);
TangentPair random_disc_pair(int n, RandomStream& rng, double rmax = 1.0);
TangentPair random_rp_disc_pair(int n, RandomStream& rng, double rmax = 1.0);

}  // namespace orbitcap::orbit

#endif  // ORBITCAP_ORBIT_HPP_
