#ifndef ORBITCAP_CAPACITY_HPP_
#define ORBITCAP_CAPACITY_HPP_

#include <map>
#include <string>
#include <vector>

#include "orbitcap/billiard.hpp"
#include "orbitcap/calibration.hpp"
#include "orbitcap/cutmaps.hpp"

// Hofer-Zehnder capacity certification: closed-form upper bounds, admissible
// profile construction and certification for the lower bounds, and the final
// capacity tables.  All capacities are reported in units of the measured
// prime-geodesic length of the space in question, with the absolute unit
// carried alongside.

namespace orbitcap::capacity {

using calib::Space;

cutmaps::TwistRadii twist_radii(double s);

// l-normalized:  CP: sqrt(s^2+1) - |s|   (s = 0 gives 1)
//                RP: 2                   (s must be 0)
double upper_bound(Space space, double s);

// A smooth reparameterization profile f on [0, domain]: f == 0 near 0,
// f == osc - eps near the boundary, 0 <= f' <= slope_cap < 1.  The derivative
// is a mollified trapezoid (quintic smoothstep ramps); plateau and ramp widths
// shrink with eps so the slope cap stays feasible.
struct AdmissibleProfile {
  double osc = 0.0;       // target oscillation (absolute)
  double eps = 0.0;       // sacrificed oscillation (absolute)
  double domain = 0.0;    // = osc
  double slope_cap = 0.0;
  double plateau = 0.0;   // width of the flat ends
  double ramp = 0.0;      // smoothstep width
  double plateau_low = 0.0;
  double plateau_high = 0.0;

  double deriv(double x) const;
  double value(double x) const;  // integral of deriv, exact per segment
  double slope_used() const;     // actual climb slope, <= slope_cap
};

AdmissibleProfile make_profile(double osc, double eps);

struct SpotCheck {
  double level = 0.0;
  double fprime = 0.0;
  double period = 0.0;       // measured period of the reparameterized flow
  double period_ratio = 0.0; // period * fprime, should be 1 within 1e-4
  bool ok = false;
};

struct Certification {
  bool ok = false;
  double max_slope = 0.0;
  double min_analytic_period = 0.0;  // min over grid of 1/f' on the climb
  double oscillation = 0.0;
  std::vector<SpotCheck> spots;
  std::string failure;
};

// (i) analytic: 1/f' > 1 on a 1e4-point grid; (ii) empirical: for 5 levels,
// the measured period of the underlying circle-action flow divided by f'
// matches the closed form within 1e-4 relative.
Certification certify_admissible(const AdmissibleProfile& profile, Space space, double s,
                                 int n = 1, bool empirical = true, unsigned seed = 1);

struct LowerBoundOptions {
  int n = 1;
  bool empirical_spots = true;
  unsigned seed = 1;
  billiard::ScanSpec scan;  // RP only
};

// l-normalized:  CP: upper_bound - eps, backed by a certified profile
//                RP: (1 - sqrt(eps)) * 2, backed by a billiard scan at eps
double lower_bound(Space space, double s, double eps, const LowerBoundOptions& opt = {});

struct CapacityReport {
  std::string space;  // "CP" | "RP"
  int n = 1;
  double s = 0.0;
  double lower = 0.0;   // in l units
  double upper = 0.0;   // in l units
  double l_unit = 0.0;  // measured prime length (absolute)
  double eps = 0.0;
  std::map<std::string, double> diagnostics;
};

std::vector<CapacityReport> capacity_table(Space space, const std::vector<double>& s_values,
                                           double eps, const LowerBoundOptions& opt = {});

// scaling: (D_rho, s) ~ (D_1, s/rho) with form multiplier rho
struct ScalingTriple {
  double radius = 1.0;
  double twist = 0.0;
  double multiplier = 1.0;
};
ScalingTriple scaling_equivalent(double rho, double s);

// capacity bound after a metric change with max eigenvalue a_max
double metric_change_bound(double base_capacity, double a_max);

// l-normalized bound for a non-constant twist in class s with optimized
// primitive bound rho: sqrt(s^2 + rho^2) - |s|
double nonconstant_twist_bound(double s, double rho);

enum class AuxKind { scaling, metric_change, nonconstant_twist };
double auxiliary_bounds(AuxKind kind, double a, double b);

}  // namespace orbitcap::capacity

#endif  // ORBITCAP_CAPACITY_HPP_
