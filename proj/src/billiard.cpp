#include "orbitcap/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "orbitcap/types.hpp"

namespace orbitcap::billiard {

namespace {

constexpr double kPi = 3.14159265358979323846;

// quintic smoothstep and derivative
double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double dsmoothstep(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

}  // namespace

double BilliardPotential::value(double theta) const {
  double th = theta <= kPi / 2 ? theta : kPi - theta;  // mirror across the equator
  double lo = kPi / 2 - eps, hi = kPi / 2 - eps / 2;
  if (th <= lo) return 0.0;
  if (th >= hi) return 1.0;
  return smoothstep((th - lo) / (eps / 2));
}

double BilliardPotential::dvalue(double theta) const {
  double sign = theta <= kPi / 2 ? 1.0 : -1.0;
  double th = theta <= kPi / 2 ? theta : kPi - theta;
  double lo = kPi / 2 - eps, hi = kPi / 2 - eps / 2;
  if (th <= lo || th >= hi) return 0.0;
  return sign * dsmoothstep((th - lo) / (eps / 2)) / (eps / 2);
}

double energy(const BilliardState& s, const BilliardPotential& pot) {
  double st = std::sin(s.th);
  return std::sqrt(s.thd * s.thd + st * st * s.phd * s.phd + pot.value(s.th));
}

double angular_momentum(const BilliardState& s) {
  double st = std::sin(s.th);
  return st * st * s.phd;
}

BilliardState billiard_rhs(const BilliardState& s, const BilliardPotential& pot) {
  double h = energy(s, pot);
  if (h < 1e-12) throw std::runtime_error("Hamiltonian vanishes: flow direction undefined");
  double st = std::sin(s.th), ct = std::cos(s.th);
  BilliardState d;
  d.th = s.thd / h;
  d.ph = s.phd / h;
  d.thd = (st * ct * s.phd * s.phd - 0.5 * pot.dvalue(s.th)) / h;
  d.phd = (st > 1e-12) ? (-2.0 * (ct / st) * s.thd * s.phd / h) : 0.0;
  return d;
}

namespace {

BilliardState rk4(const BilliardState& s, const BilliardPotential& pot, double dt) {
  auto add = [](const BilliardState& a, const BilliardState& b, double w) {
    return BilliardState{a.th + w * b.th, a.ph + w * b.ph, a.thd + w * b.thd, a.phd + w * b.phd};
  };
  BilliardState k1 = billiard_rhs(s, pot);
  BilliardState k2 = billiard_rhs(add(s, k1, dt / 2), pot);
  BilliardState k3 = billiard_rhs(add(s, k2, dt / 2), pot);
  BilliardState k4 = billiard_rhs(add(s, k3, dt), pot);
  BilliardState out = s;
  out.th += dt / 6 * (k1.th + 2 * k2.th + 2 * k3.th + k4.th);
  out.ph += dt / 6 * (k1.ph + 2 * k2.ph + 2 * k3.ph + k4.ph);
  out.thd += dt / 6 * (k1.thd + 2 * k2.thd + 2 * k3.thd + k4.thd);
  out.phd += dt / 6 * (k1.phd + 2 * k2.phd + 2 * k3.phd + k4.phd);
  return out;
}

}  // namespace

StepResult adaptive_step(const BilliardState& s, const BilliardPotential& pot, double dt) {
  const double reject = Tolerances::active().billiard_step_drift;
  double h0 = energy(s, pot), l0 = angular_momentum(s);
  for (int attempt = 0; attempt < 24; ++attempt) {
    BilliardState next = rk4(s, pot, dt);
    double drift = std::abs(energy(next, pot) - h0) + std::abs(angular_momentum(next) - l0);
    if (drift <= reject) {
      double dt_next = (drift < 0.01 * reject) ? std::min(dt * 1.5, 2e-3) : dt;
      return {next, dt, dt_next};
    }
    dt *= 0.5;
  }
  throw std::runtime_error("billiard step rejected below minimal step size");
}

BilliardState advance_fixed(BilliardState s, const BilliardPotential& pot, double span,
                            double dt_hint) {
  int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt_hint)));
  double dt = span / n;
  for (int k = 0; k < n; ++k) s = rk4(s, pot, dt);
  return s;
}

namespace {

struct PathTracker {
  double t = 0.0;
  double dt = 1e-3;
  double max_l_drift = 0.0;
  double l0 = 0.0;
  long steps = 0;

  void init(const BilliardState& s) { l0 = angular_momentum(s); }
  void observe(const BilliardState& s) {
    max_l_drift = std::max(max_l_drift, std::abs(angular_momentum(s) - l0));
    ++steps;
  }
};

struct RadialPeriod {
  bool ok = false;
  double period = 0.0;
  double dphi = 0.0;
  BilliardState end;
};

// One radial oscillation starting from a theta-minimum (thd = 0, thdd > 0):
// integrate past the maximum to the next minimum crossing and refine it.
RadialPeriod measure_radial(const BilliardState& ic, const BilliardPotential& pot,
                            PathTracker& trk, double budget) {
  BilliardState s = ic;
  double t = 0.0;
  double dt = trk.dt;
  int sign_changes = 0;
  BilliardState prev = s;
  double t_prev = 0.0;
  // leave the initial thd = 0
  {
    StepResult r = adaptive_step(s, pot, dt);
    s = r.state;
    t += r.dt_taken;
    dt = r.dt_next;
    trk.observe(s);
  }
  while (t < budget) {
    prev = s;
    t_prev = t;
    StepResult r = adaptive_step(s, pot, dt);
    s = r.state;
    t += r.dt_taken;
    dt = r.dt_next;
    trk.observe(s);
    if (prev.thd != 0.0 && s.thd * prev.thd <= 0.0) {
      ++sign_changes;
      if (sign_changes == 2) {  // back at a minimum: bisect the crossing
        double lo = 0.0, hi = t - t_prev;
        BilliardState at_lo = prev;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          BilliardState sm = advance_fixed(at_lo, pot, mid - lo, 1e-4);
          if (sm.thd * prev.thd > 0) {
            lo = mid;
            at_lo = sm;
          } else {
            hi = mid;
          }
        }
        BilliardState end = advance_fixed(at_lo, pot, 0.5 * (hi - lo), 1e-4);
        RadialPeriod out;
        out.ok = true;
        out.period = t_prev + 0.5 * (lo + hi);
        out.dphi = end.ph - ic.ph;
        out.end = end;
        trk.dt = dt;
        return out;
      }
    }
  }
  return {};
}

double phase_distance(const BilliardState& a, const BilliardState& ref, double expected_phi) {
  return std::abs(a.th - ref.th) + std::abs(a.thd - ref.thd) + std::abs(a.phd - ref.phd) +
         std::abs(a.ph - expected_phi);
}

// Polish a candidate period by golden-section on the phase distance.
struct Verified {
  bool ok = false;
  double period = 0.0;
  double residual = 0.0;
};

Verified verify_period(const BilliardState& ic, const BilliardPotential& pot, double t_guess,
                       double expected_phi, PathTracker& trk) {
  const double window = 0.05;
  BilliardState anchor = ic;
  double t_anchor = 0.0;
  {  // march to the window edge adaptively
    double t = 0.0, dt = trk.dt;
    BilliardState s = ic;
    while (t < t_guess - window) {
      StepResult r = adaptive_step(s, pot, dt);
      s = r.state;
      t += r.dt_taken;
      dt = r.dt_next;
      trk.observe(s);
    }
    anchor = s;
    t_anchor = t;
  }
  auto dist_at = [&](double local) {
    return phase_distance(advance_fixed(anchor, pot, local, 1e-4), ic, expected_phi);
  };
  double lo = 0.0, hi = 2.0 * window;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = dist_at(a), fb = dist_at(b);
  for (int it = 0; it < 70 && (hi - lo) > 1e-13; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = dist_at(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = dist_at(b);
    }
  }
  double local = 0.5 * (lo + hi);
  return {dist_at(local) < Tolerances::active().period_return, t_anchor + local, dist_at(local)};
}

// --- meridian (L = 0) family: exact 1D reduction with the potential folded
// evenly through the pole ---

double folded_value(const BilliardPotential& pot, double th) {
  double w = std::fmod(std::abs(th), 2 * kPi);
  if (w > kPi) w = 2 * kPi - w;
  return pot.value(w);
}

double folded_dvalue(const BilliardPotential& pot, double th) {
  double t = th;
  double sign = 1.0;
  if (t < 0) {
    t = -t;
    sign = -sign;
  }
  t = std::fmod(t, 2 * kPi);
  if (t > kPi) {
    t = 2 * kPi - t;
    sign = -sign;
  }
  return sign * pot.dvalue(t);
}

struct MeridianState {
  double th, thd;
};

MeridianState meridian_rk4(const MeridianState& s, const BilliardPotential& pot, double h0,
                           double dt) {
  auto f = [&](const MeridianState& q) {
    double h = std::sqrt(q.thd * q.thd + folded_value(pot, q.th));
    (void)h0;
    return MeridianState{q.thd / h, -0.5 * folded_dvalue(pot, q.th) / h};
  };
  MeridianState k1 = f(s);
  MeridianState k2 = f({s.th + dt / 2 * k1.th, s.thd + dt / 2 * k1.thd});
  MeridianState k3 = f({s.th + dt / 2 * k2.th, s.thd + dt / 2 * k2.thd});
  MeridianState k4 = f({s.th + dt * k3.th, s.thd + dt * k3.thd});
  return {s.th + dt / 6 * (k1.th + 2 * k2.th + 2 * k3.th + k4.th),
          s.thd + dt / 6 * (k1.thd + 2 * k2.thd + 2 * k3.thd + k4.thd)};
}

Verified meridian_period(double h, const BilliardPotential& pot, double budget, long& steps) {
  // start at the pole moving outward; the orbit oscillates between the two
  // potential walls through both poles
  MeridianState s{0.0, h};
  double t = 0.0;
  const double dt = 5e-4;
  MeridianState prev = s;
  // theta returning to 0 with positive velocity completes the full cycle
  // 0 -> +turn -> 0 -> -turn -> 0 (the intermediate crossing has thd < 0)
  while (t < budget) {
    prev = s;
    s = meridian_rk4(s, pot, h, dt);
    t += dt;
    ++steps;
    if (prev.th != 0.0 && s.th * prev.th <= 0.0 && s.thd > 0) {
      {
        // refine the crossing time of theta
        double lo = t - dt, hi = t;
        MeridianState at = prev;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          MeridianState sm = at;
          int nsub = 4;
          double sub = (mid - lo) / nsub;
          for (int k = 0; k < nsub; ++k) sm = meridian_rk4(sm, pot, h, sub);
          if (sm.th * prev.th > 0) {
            lo = mid;
            at = sm;
          } else {
            hi = mid;
          }
        }
        double period = 0.5 * (lo + hi);
        double resid = std::abs(s.thd - h);
        return {resid < Tolerances::active().period_return, period, resid};
      }
    }
  }
  return {};
}

}  // namespace

ScanResult billiard_min_period(double eps, double energy_cap, const ScanSpec& spec) {
  if (!(eps > 0.0 && eps <= 0.2)) throw std::invalid_argument("eps must lie in (0, 0.2]");
  if (!(energy_cap > 0.0 && energy_cap < 1.0))
    throw std::invalid_argument("energy cap must lie in (0,1)");
  BilliardPotential pot{eps};
  ScanResult result;
  result.bound = 2 * kPi * (1.0 - std::sqrt(eps));

  auto record = [&](const PeriodicOrbit& orb) {
    result.orbits.push_back(orb);
    result.periodic += 1;
    result.max_angmom_drift = std::max(result.max_angmom_drift, orb.angmom_drift);
  };

  auto make_ic = [&](double theta_min, double h) {
    BilliardState s;
    s.th = theta_min;
    s.ph = 0.0;
    s.thd = 0.0;
    double v = h * h - pot.value(theta_min);
    s.phd = std::sqrt(std::max(0.0, v)) / std::sin(theta_min);
    return s;
  };

  // ---- probe grid: measure the azimuth advance per radial period and watch
  // for direct returns within the budget ----
  const double th_lo = 0.15;
  const double th_hi = kPi / 2 - eps * 1.05;
  struct Probe {
    double theta = 0.0, t_r = 0.0, dphi = 0.0;
    bool ok = false;
  };
  std::vector<std::vector<Probe>> maps(spec.energies.size());

  for (size_t ei = 0; ei < spec.energies.size(); ++ei) {
    double h = spec.energies[ei];
    if (h >= energy_cap) continue;
    maps[ei].resize(spec.theta_samples);
    for (int k = 0; k < spec.theta_samples; ++k) {
      double theta = th_lo + (th_hi - th_lo) * k / (spec.theta_samples - 1.0);
      BilliardState ic = make_ic(theta, h);
      PathTracker trk;
      trk.init(ic);
      result.probed += 1;
      Probe pr;
      pr.theta = theta;

      // chain radial periods through the budget; a direct return shows up as
      // an accumulated azimuth advance near a multiple of 2 pi
      BilliardState cur = ic;
      double t_total = 0.0, phi_total = 0.0;
      bool returned = false;
      for (int leg = 0; leg < 16 && t_total < spec.time_budget; ++leg) {
        RadialPeriod rp = measure_radial(cur, pot, trk, spec.time_budget - t_total);
        if (!rp.ok) break;
        if (leg == 0) {
          pr.ok = true;
          pr.t_r = rp.period;
          pr.dphi = rp.dphi;
        }
        t_total += rp.period;
        phi_total += rp.dphi;
        double wind = phi_total / (2 * kPi);
        if (std::abs(wind - std::round(wind)) < 1e-9 && std::round(wind) >= 1) {
          Verified v = verify_period(ic, pot, t_total, 2 * kPi * std::round(wind), trk);
          if (v.ok) {
            record({v.period, h, theta, v.residual, trk.max_l_drift, "grid"});
            returned = true;
          }
          break;
        }
        cur = rp.end;
      }
      if (!returned) result.excluded += 1;
      maps[ei][k] = pr;
    }
  }

  // ---- resonance shooting: bisection on dphi(theta_min) = 2 pi p / q ----
  for (size_t ei = 0; ei < spec.energies.size(); ++ei) {
    double h = spec.energies[ei];
    if (h >= energy_cap || maps[ei].empty()) continue;
    for (auto [p, q] : spec.targets) {
      double target = 2 * kPi * p / q;
      for (int k = 0; k + 1 < spec.theta_samples; ++k) {
        const Probe& a = maps[ei][k];
        const Probe& b = maps[ei][k + 1];
        if (!a.ok || !b.ok) continue;
        if ((a.dphi - target) * (b.dphi - target) > 0) continue;
        if (q * std::max(a.t_r, b.t_r) > spec.time_budget) continue;

        double lo = a.theta, hi = b.theta;
        BilliardState ic;
        double dphi_mid = 0.0, t_r = 0.0;
        for (int it = 0; it < 40; ++it) {
          double mid = 0.5 * (lo + hi);
          ic = make_ic(mid, h);
          PathTracker trk;
          trk.init(ic);
          result.probed += 1;
          RadialPeriod rp = measure_radial(ic, pot, trk, spec.time_budget);
          if (!rp.ok) break;
          dphi_mid = rp.dphi;
          t_r = rp.period;
          if ((a.dphi - target) * (dphi_mid - target) > 0)
            lo = mid;
          else
            hi = mid;
        }
        if (std::abs(dphi_mid - target) > 1e-7) continue;

        double theta_star = 0.5 * (lo + hi);
        ic = make_ic(theta_star, h);
        PathTracker trk;
        trk.init(ic);
        result.probed += 1;
        Verified v = verify_period(ic, pot, q * t_r, 2 * kPi * p, trk);
        if (v.ok)
          record({v.period, h, theta_star, v.residual, trk.max_l_drift,
                  "resonant " + std::to_string(p) + "/" + std::to_string(q)});
        else
          result.excluded += 1;
      }
    }
  }

  // ---- circular orbits balanced in the potential ramp ----
  for (int k = 1; k <= spec.circular_samples; ++k) {
    double u = 0.2 * k / spec.circular_samples;  // ramp coordinate, bottom sliver
    double theta = kPi / 2 - eps + u * (eps / 2);
    double dv = pot.dvalue(theta);
    double st = std::sin(theta), ct = std::cos(theta);
    if (dv <= 0 || ct <= 0) continue;
    double phd = std::sqrt(dv / (2 * st * ct));
    BilliardState ic{theta, 0.0, 0.0, phd};
    double h = energy(ic, pot);
    if (h >= energy_cap || h < 0.05) continue;
    PathTracker trk;
    trk.init(ic);
    result.probed += 1;
    double t_guess = 2 * kPi * h / phd;
    if (t_guess > spec.time_budget) continue;
    Verified v = verify_period(ic, pot, t_guess, 2 * kPi, trk);
    if (v.ok)
      record({v.period, h, theta, v.residual, trk.max_l_drift, "circular"});
    else
      result.excluded += 1;
  }

  // ---- meridian (L = 0) family through the poles ----
  for (double h : spec.energies) {
    if (h >= energy_cap) continue;
    long steps = 0;
    result.probed += 1;
    Verified v = meridian_period(h, pot, spec.time_budget, steps);
    if (v.ok)
      record({v.period, h, 0.0, v.residual, 0.0, "meridian"});
    else
      result.excluded += 1;
  }

  if (result.orbits.empty())
    throw std::runtime_error("billiard scan found no verified periodic orbits");
  result.min_period = result.orbits.front().period;
  for (const auto& o : result.orbits) result.min_period = std::min(result.min_period, o.period);
  return result;
}

void write_scan_csv(const std::string& path, const std::vector<double>& eps_values,
                    const std::vector<ScanResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << std::setprecision(17);
  out << "eps,min_period,bound,probed,periodic,excluded,max_angmom_drift\n";
  for (size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    out << eps_values[k] << "," << r.min_period << "," << r.bound << "," << r.probed << ","
        << r.periodic << "," << r.excluded << "," << r.max_angmom_drift << "\n";
  }
}

}  // namespace orbitcap::billiard
