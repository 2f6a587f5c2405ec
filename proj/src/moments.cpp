#include "orbitcap/moments.hpp"

#include <stdexcept>

namespace orbitcap::moments {

using liealg::bracket;
using liealg::killing_norm;

MomentValue mu_tangent(const TangentPair& p, double s) {
  if (orbit::tangency_residual(p.base, p.vec) > Tolerances::active().tangency)
    throw std::invalid_argument("mu_tangent requires a tangent fiber");
  AlgebraElement val = bracket({p.base.matrix}, p.vec);
  if (s != 0.0) val = val + s * AlgebraElement{p.base.matrix};
  return {val, GroupTag::SU};
}

MomentValue mu_product(const OrbitPoint& a, const OrbitPoint& b, double r1, double r2) {
  if (a.n != b.n) throw std::invalid_argument("dimension mismatch");
  return {{r1 * a.matrix - r2 * b.matrix}, GroupTag::SU};
}

MomentValue mu_real(const OrbitPoint& a) { return {orbit::real_part(a), GroupTag::SO}; }

double triangle_residual(const TangentPair& p, const MomentValue& image, double s) {
  MomentValue mine = mu_tangent(p, s);
  if (image.tag == GroupTag::SO) {
    // comparing against an so(n+1) value is only meaningful when the tangent
    // moment is itself real (RP^n data)
    if (liealg::realness_residual(mine.value.m) > Tolerances::active().membership)
      throw std::invalid_argument("group tag mismatch: tangent moment is not real");
  }
  return killing_norm(mine.value - image.value);
}

}  // namespace orbitcap::moments
