#include "orbitcap/calibration.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "orbitcap/orbit.hpp"

namespace orbitcap::calib {

namespace {

using liealg::AlgebraElement;
using orbit::OrbitPoint;

struct GeodesicScanner {
  OrbitPoint x;
  AlgebraElement u;  // unit Killing norm

  double dist2(double t) const { return (orbit::geodesic(x, u, t).matrix - x.matrix).squaredNorm(); }

  // d/dt of dist2; zero crossing locates the return time far better than the
  // flat bottom of dist2 itself
  double ddist2(double t) const {
    OrbitPoint g = orbit::geodesic(x, u, t);
    CMat w = x.matrix * u.m - u.m * x.matrix;  // flow generator
    CMat gdot = w * g.matrix - g.matrix * w;
    return 2.0 * ((g.matrix - x.matrix).adjoint() * gdot).trace().real();
  }
};

double first_return(const GeodesicScanner& scan) {
  const double t_hi = 25.0;
  const double step = 0.02;
  double prev = scan.dist2(step);
  double best_t = 0.0;
  bool armed = false;  // the curve must first leave the start point
  for (double t = 2 * step; t < t_hi; t += step) {
    double cur = scan.dist2(t);
    armed = armed || cur > 0.5;
    if (armed && cur > prev && prev < 0.25) {  // passed a deep local minimum
      best_t = t - step;
      break;
    }
    prev = cur;
  }
  if (best_t == 0.0) throw std::runtime_error("geodesic return not found in scan window");
  double lo = best_t - 2 * step, hi = best_t + 2 * step;
  if (scan.ddist2(lo) >= 0 || scan.ddist2(hi) <= 0)
    throw std::runtime_error("geodesic return bracket invalid");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (scan.ddist2(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double measure_prime_length(Space space, int n, unsigned seed) {
  RandomStream rng(seed);
  GeodesicScanner scan;
  if (space == Space::CP) {
    scan.x = (seed == 0) ? orbit::base_point(n) : orbit::random_point(n, rng);
    scan.u = orbit::random_tangent(scan.x, rng, 1.0);
  } else {
    scan.x = (seed == 0) ? orbit::base_point(n) : orbit::random_rp_point(n, rng);
    scan.u = orbit::random_rp_tangent(scan.x, rng, 1.0);
  }
  return first_return(scan);
}

const ModelConstants& constants(Space space, int n) {
  static std::map<std::pair<int, int>, ModelConstants> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(space), n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ModelConstants mc;
    mc.prime_length = measure_prime_length(space, n, 0);
    mc.kappa = std::pow(2.0 * M_PI / mc.prime_length, 2);
    it = cache.emplace(key, mc).first;
  }
  return it->second;
}

}  // namespace orbitcap::calib
