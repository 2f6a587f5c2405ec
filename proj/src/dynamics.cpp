#include "orbitcap/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "orbitcap/moments.hpp"

namespace orbitcap::dynamics {

using liealg::killing_norm;

double kinetic_energy(const TangentPair& p) { return 0.5 * liealg::killing_inner(p.vec, p.vec); }

symforms::TangentOfTangent magnetic_rhs(const TangentPair& p, double s) {
  symforms::TangentOfTangent xi;
  xi.at = p;
  xi.hdot = p.vec;
  const CMat& x = p.base.matrix;
  const CMat& v = p.vec.m;
  CMat jv = x * v - v * x;
  xi.vdot = {s * jv + (jv * v - v * jv)};
  return xi;
}

namespace {

struct AmbientState {
  CMat x;
  CMat v;
};

AmbientState rhs(const AmbientState& st, double s) {
  CMat jv = st.x * st.v - st.v * st.x;
  return {st.v, s * jv + (jv * st.v - st.v * jv)};
}

TangentPair retract(const AmbientState& st, double radius_bound) {
  orbit::OrbitPoint x = orbit::from_line(orbit::line_from_matrix(st.x));
  return {x, orbit::tangent_project(x, {st.v}), radius_bound};
}

AmbientState rk4_step(const AmbientState& st, double s, double dt) {
  AmbientState k1 = rhs(st, s);
  AmbientState k2 = rhs({st.x + 0.5 * dt * k1.x, st.v + 0.5 * dt * k1.v}, s);
  AmbientState k3 = rhs({st.x + 0.5 * dt * k2.x, st.v + 0.5 * dt * k2.v}, s);
  AmbientState k4 = rhs({st.x + dt * k3.x, st.v + dt * k3.v}, s);
  return {st.x + (dt / 6.0) * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
          st.v + (dt / 6.0) * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

TangentPair advance(const TangentPair& from, double s, double span, double dt_hint) {
  // integrate a short span (used by the period refinement)
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt_hint)));
  double dt = span / steps;
  TangentPair cur = from;
  for (int k = 0; k < steps; ++k) {
    AmbientState st{cur.base.matrix, cur.vec.m};
    cur = retract(rk4_step(st, s, dt), from.radius_bound);
  }
  return cur;
}

}  // namespace

double PhasePathRecord::energy_drift() const {
  if (energy_log.empty()) return 0.0;
  double e0 = energy_log.front(), worst = 0.0;
  for (double e : energy_log) worst = std::max(worst, std::abs(e - e0));
  return worst / std::max(std::abs(e0), 1e-12);
}

double PhasePathRecord::moment_drift() const {
  if (moment_log.empty()) return 0.0;
  double m0 = moment_log.front(), worst = 0.0;
  for (double m : moment_log) worst = std::max(worst, std::abs(m - m0));
  return worst / std::max(std::abs(m0), 1e-12);
}

PhasePathRecord integrate(const TangentPair& p0, double s, double t_end, double dt) {
  if (dt <= 0 || t_end <= 0) throw std::invalid_argument("t_end and dt must be positive");
  const Tolerances& tol = Tolerances::active();
  PhasePathRecord rec;
  int steps = static_cast<int>(std::ceil(t_end / dt));
  rec.times.reserve(steps + 1);
  rec.states.reserve(steps + 1);

  TangentPair cur = p0;
  auto log_state = [&](double t) {
    rec.times.push_back(t);
    rec.states.push_back(cur);
    rec.energy_log.push_back(kinetic_energy(cur));
    rec.moment_log.push_back(killing_norm(moments::mu_tangent(cur, s).value));
  };
  log_state(0.0);

  double t_cur = 0.0;
  for (int k = 0; k < steps; ++k) {
    double step = std::min(dt, t_end - t_cur);
    AmbientState st{cur.base.matrix, cur.vec.m};
    AmbientState next = rk4_step(st, s, step);
    double drift = orbit::on_orbit_residual({p0.base.n, next.x, cur.base.line});
    cur = retract(next, p0.radius_bound);
    drift = std::max(drift, orbit::tangency_residual(cur.base, cur.vec));
    if (drift > tol.integrator_drift)
      throw std::runtime_error("constraint drift " + std::to_string(drift) +
                               " exceeded the integrator tolerance");
    t_cur += step;
    log_state(t_cur);
  }
  return rec;
}

double predicted_period(double s, double speed, int n) {
  double kappa = calib::constants(calib::Space::CP, n).kappa;
  return 2.0 * M_PI / std::sqrt(s * s + kappa * speed * speed);
}

double measured_period(const TangentPair& p0, double s) {
  double speed = killing_norm(p0.vec);
  if (speed <= 0) throw std::invalid_argument("measured_period requires |v| > 0");
  const double t_pred = predicted_period(s, speed, p0.base.n);
  const double dt = t_pred / 4096.0;
  const double budget = 3.0 * t_pred;

  PhasePathRecord rec = integrate(p0, s, budget, dt);
  auto dist = [&](const TangentPair& q) {
    return std::sqrt((q.base.matrix - p0.base.matrix).squaredNorm() +
                     (q.vec.m - p0.vec.m).squaredNorm());
  };

  // first interior local minimum of the phase distance that is deep enough to
  // be a return candidate
  const double deep = 0.05 * std::max(1.0, speed);
  int idx = -1;
  for (size_t k = 2; k + 1 < rec.states.size(); ++k) {
    double dm = dist(rec.states[k - 1]), d0 = dist(rec.states[k]), dp = dist(rec.states[k + 1]);
    if (d0 <= dm && d0 <= dp && d0 < deep) {
      idx = static_cast<int>(k);
      break;
    }
  }
  if (idx < 0) throw std::runtime_error("no return detected within 3x the predicted period");

  // golden-section refinement of the distance, re-integrating short spans
  // from the bracketing snapshot
  const TangentPair& anchor = rec.states[idx - 1];
  const double t_anchor = rec.times[idx - 1];
  auto dist_at = [&](double local_t) { return dist(advance(anchor, s, local_t, dt / 8.0)); };
  double lo = 0.0, hi = 2.0 * dt;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = dist_at(a), fb = dist_at(b);
  for (int it = 0; it < 60 && (hi - lo) > 1e-12; ++it) {
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
  double t_star = t_anchor + 0.5 * (lo + hi);
  if (dist_at(0.5 * (lo + hi)) > Tolerances::active().period_return)
    throw std::runtime_error("return residual above tolerance at the detected period");
  return t_star;
}

double hamiltonian_relation_residual(const TangentPair& p, double s, RandomStream& rng) {
  symforms::TangentOfTangent field = magnetic_rhs(p, s);
  const double h = Tolerances::active().fd_step;
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    AlgebraElement hr = liealg::sample_algebra(liealg::SampleKind::algebra_su, p.base.n, rng);
    AlgebraElement wr = liealg::sample_algebra(liealg::SampleKind::algebra_su, p.base.n, rng);
    symforms::TangentOfTangent eta = symforms::make_variation(p, hr, wr);
    double de = (kinetic_energy(symforms::variation_curve(eta, h)) -
                 kinetic_energy(symforms::variation_curve(eta, -h))) /
                (2.0 * h);
    double omega = symforms::twisted_form(p, s, field, eta);
    worst = std::max(worst, std::abs(omega + de));
  }
  return worst;
}

void write_trajectory_csv(const std::string& path, const PhasePathRecord& rec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << std::setprecision(17);
  if (rec.states.empty()) return;
  int d = rec.states.front().base.n + 1;
  out << "t";
  for (int k = 0; k < d; ++k) out << ",z" << k << "_re,z" << k << "_im";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out << ",v" << i << j << "_re,v" << i << j << "_im";
  out << ",energy,moment_norm\n";
  for (size_t k = 0; k < rec.states.size(); ++k) {
    const auto& st = rec.states[k];
    out << rec.times[k];
    for (int i = 0; i < d; ++i)
      out << "," << st.base.line(i).real() << "," << st.base.line(i).imag();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out << "," << st.vec.m(i, j).real() << "," << st.vec.m(i, j).imag();
    out << "," << rec.energy_log[k] << "," << rec.moment_log[k] << "\n";
  }
}

}  // namespace orbitcap::dynamics
