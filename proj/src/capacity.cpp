#include "orbitcap/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "orbitcap/dynamics.hpp"

namespace orbitcap::capacity {

namespace {

int thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORBITCAP_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// integral of the quintic smoothstep: 2.5 u^4 - 3 u^5 + u^6
double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double smoothstep_integral(double u) { return u * u * u * u * (2.5 + u * (-3.0 + u)); }

}  // namespace

cutmaps::TwistRadii twist_radii(double s) { return cutmaps::TwistRadii::from_twist(s); }

double upper_bound(Space space, double s) {
  if (space == Space::CP) return std::sqrt(s * s + 1.0) - std::abs(s);
  if (s != 0.0) throw std::invalid_argument("the RP model is untwisted: s must be 0");
  return 2.0;
}

double AdmissibleProfile::deriv(double x) const {
  if (x <= plateau || x >= domain - plateau) return 0.0;
  double up0 = plateau, up1 = plateau + ramp;
  double dn0 = domain - plateau - ramp, dn1 = domain - plateau;
  if (x < up1) return slope_used() * smoothstep((x - up0) / ramp);
  if (x > dn0) return slope_used() * smoothstep((dn1 - x) / ramp);
  return slope_used();
}

double AdmissibleProfile::value(double x) const {
  x = std::clamp(x, 0.0, domain);
  double up0 = plateau, up1 = plateau + ramp;
  double dn0 = domain - plateau - ramp, dn1 = domain - plateau;
  double s = slope_used();
  double acc = 0.0;
  if (x <= up0) return 0.0;
  if (x <= up1) return s * ramp * smoothstep_integral((x - up0) / ramp);
  acc = s * ramp * 0.5;
  if (x <= dn0) return acc + s * (x - up1);
  acc += s * (dn0 - up1);
  if (x <= dn1) return acc + s * ramp * (0.5 - smoothstep_integral((dn1 - x) / ramp));
  return acc + s * ramp * 0.5;
}

AdmissibleProfile make_profile(double osc, double eps) {
  if (osc <= 0) throw std::invalid_argument("profile oscillation must be positive");
  if (eps <= 0 || eps >= osc)
    throw std::invalid_argument("profile eps must lie in (0, osc)");
  AdmissibleProfile p;
  p.osc = osc;
  p.eps = eps;
  p.domain = osc;
  double delta = eps / osc;
  p.slope_cap = 1.0 - 0.5 * delta;
  // widths: 5% ends when feasible, shrinking with eps otherwise so the climb
  // osc - eps still fits under the slope cap
  double slack = p.domain * delta / (2.0 - delta);  // = domain - (osc-eps)/slope_cap
  double w = std::min(0.05 * p.domain, slack / 3.0);
  p.plateau = w;
  p.ramp = w;
  p.plateau_low = w;
  p.plateau_high = p.domain - w;
  return p;
}

double AdmissibleProfile::slope_used() const {
  return (osc - eps) / (domain - 2.0 * plateau - ramp);
}

Certification certify_admissible(const AdmissibleProfile& profile, Space space, double s, int n,
                                 bool empirical, unsigned seed) {
  Certification cert;
  const int grid = 10000;
  double max_slope = 0.0;
  for (int k = 0; k <= grid; ++k) {
    double x = profile.domain * k / grid;
    max_slope = std::max(max_slope, profile.deriv(x));
  }
  cert.max_slope = max_slope;
  cert.min_analytic_period = (max_slope > 0) ? 1.0 / max_slope : 0.0;
  cert.oscillation = profile.value(profile.domain) - profile.value(0.0);
  if (!(max_slope < 1.0)) {
    cert.failure = "slope reaches 1: some reparameterized orbit has period <= 1";
    return cert;
  }
  if (space == Space::RP && s != 0.0) {
    cert.failure = "the RP model is untwisted";
    return cert;
  }

  if (empirical) {
    // 5 levels in the climb: the reparameterized flow must have period
    // (measured period of the circle action) / f'
    const auto& mc = calib::constants(Space::CP, n);
    double kappa = mc.kappa;
    double x0 = profile.plateau + profile.ramp;
    double x1 = profile.domain - profile.plateau - profile.ramp;
    RandomStream rng(20240u * seed + static_cast<unsigned>(n));
    for (int i = 0; i < 5; ++i) {
      SpotCheck spot;
      spot.level = x0 + (x1 - x0) * (i + 0.5) / 5.0;
      spot.fprime = profile.deriv(spot.level);
      if (spot.fprime < 1e-9) continue;  // constant orbits are excluded
      double w = kappa * spot.level / (2.0 * M_PI) + std::abs(s);
      double speed = std::sqrt(std::max(0.0, (w * w - s * s) / kappa));
      speed = std::clamp(speed, 0.05, 0.98);
      orbit::OrbitPoint x = orbit::base_point(n);
      orbit::TangentPair p{x, orbit::random_tangent(x, rng, speed), 1.0};
      double t_meas = dynamics::measured_period(p, s);
      double t_form = dynamics::predicted_period(s, speed, n);
      spot.period = (t_meas / t_form) / spot.fprime;
      spot.period_ratio = spot.period * spot.fprime;
      spot.ok = std::abs(spot.period_ratio - 1.0) < 1e-4 && spot.period > 1.0;
      cert.spots.push_back(spot);
      if (!spot.ok) {
        cert.failure = "empirical period spot-check failed";
        return cert;
      }
    }
  }
  cert.ok = true;
  return cert;
}

namespace {

double lower_bound_detailed(Space space, double s, double eps, const LowerBoundOptions& opt,
                            std::map<std::string, double>* diag) {
  if (!(eps > 0.0 && eps <= 0.2)) throw std::invalid_argument("eps must lie in (0, 0.2]");
  if (space == Space::CP) {
    double upper = upper_bound(space, s);
    double l = calib::constants(Space::CP, opt.n).prime_length;
    AdmissibleProfile prof = make_profile(upper * l, eps * l);
    Certification cert = certify_admissible(prof, space, s, opt.n, opt.empirical_spots, opt.seed);
    if (!cert.ok) throw std::runtime_error("profile certification failed: " + cert.failure);
    if (diag) {
      (*diag)["profile_max_slope"] = cert.max_slope;
      (*diag)["profile_min_period"] = cert.min_analytic_period;
      double spot_worst = 0;
      for (const auto& spot : cert.spots)
        spot_worst = std::max(spot_worst, std::abs(spot.period_ratio - 1.0));
      if (!cert.spots.empty()) (*diag)["spot_period_residual"] = spot_worst;
    }
    return upper - eps;
  }
  if (s != 0.0) throw std::invalid_argument("the RP model is untwisted: s must be 0");
  billiard::ScanResult scan = billiard::billiard_min_period(eps, 0.95, opt.scan);
  if (!(scan.min_period > scan.bound))
    throw std::runtime_error("billiard scan violated the period bound");
  if (diag) {
    (*diag)["scan_min_period"] = scan.min_period;
    (*diag)["scan_bound"] = scan.bound;
    (*diag)["scan_probed"] = scan.probed;
    (*diag)["scan_periodic"] = scan.periodic;
    (*diag)["scan_excluded"] = scan.excluded;
    (*diag)["scan_angmom_drift"] = scan.max_angmom_drift;
  }
  return (1.0 - std::sqrt(eps)) * 2.0;
}

}  // namespace

double lower_bound(Space space, double s, double eps, const LowerBoundOptions& opt) {
  return lower_bound_detailed(space, s, eps, opt, nullptr);
}

std::vector<CapacityReport> capacity_table(Space space, const std::vector<double>& s_values,
                                           double eps, const LowerBoundOptions& opt) {
  std::vector<CapacityReport> out(s_values.size());
  const auto& mc = calib::constants(space, opt.n);  // prime length measured once up front
  parallel_for(static_cast<int>(s_values.size()), [&](int k) {
    double s = s_values[k];
    CapacityReport rep;
    rep.space = (space == Space::CP) ? "CP" : "RP";
    rep.n = opt.n;
    rep.s = s;
    rep.eps = eps;
    rep.l_unit = mc.prime_length;
    rep.upper = upper_bound(space, s);
    rep.lower = lower_bound_detailed(space, s, eps, opt, &rep.diagnostics);
    rep.diagnostics["gap"] = rep.upper - rep.lower;
    rep.diagnostics["gap_rel"] =
        (space == Space::CP) ? (rep.upper - rep.lower) : (rep.upper - rep.lower) / rep.upper;
    rep.diagnostics["kappa"] = mc.kappa;
    out[k] = rep;
  });
  return out;
}

ScalingTriple scaling_equivalent(double rho, double s) {
  if (rho <= 0) throw std::invalid_argument("scaling radius must be positive");
  return {1.0, s / rho, rho};
}

double metric_change_bound(double base_capacity, double a_max) {
  if (a_max <= 0) throw std::invalid_argument("eigenvalue bound must be positive");
  return a_max * base_capacity;
}

double nonconstant_twist_bound(double s, double rho) {
  if (rho <= 0) throw std::invalid_argument("primitive bound must be positive");
  return std::sqrt(s * s + rho * rho) - std::abs(s);
}

double auxiliary_bounds(AuxKind kind, double a, double b) {
  switch (kind) {
    case AuxKind::scaling:
      return scaling_equivalent(a, b).twist;
    case AuxKind::metric_change:
      return metric_change_bound(a, b);
    case AuxKind::nonconstant_twist:
      return nonconstant_twist_bound(a, b);
  }
  throw std::invalid_argument("unknown auxiliary bound kind");
}

}  // namespace orbitcap::capacity
