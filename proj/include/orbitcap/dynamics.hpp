#ifndef ORBITCAP_DYNAMICS_HPP_
#define ORBITCAP_DYNAMICS_HPP_

#include <vector>

#include "orbitcap/calibration.hpp"
#include "orbitcap/symforms.hpp"

// Hamiltonian flows on the (twisted) tangent bundle of the orbit model:
// geodesic and magnetic geodesic flow, and first-return period measurement.

namespace orbitcap::dynamics {

using liealg::AlgebraElement;
using orbit::OrbitPoint;
using orbit::TangentPair;

// E(x,v) = g(v,v)/2
double kinetic_energy(const TangentPair& p);

// The magnetic vector field: base velocity v, covariant fiber derivative
// s*j(v).  In ambient coordinates the fiber derivative is
//   vdot = s [x,v] + [[x,v], v],
// the second (stabilizer-valued) term being the exact normal drift that keeps
// v tangent as x moves; per-step retraction then only mops up roundoff.
symforms::TangentOfTangent magnetic_rhs(const TangentPair& p, double s);

struct PhasePathRecord {
  std::vector<double> times;
  std::vector<TangentPair> states;
  std::vector<double> energy_log;
  std::vector<double> moment_log;  // Killing norm of mu_tangent(state, s)

  double energy_drift() const;
  double moment_drift() const;
};

// Classical RK4 with per-step retraction (line renormalization + tangent
// projection).  Aborts if membership/tangency residuals exceed the drift
// tolerance.
PhasePathRecord integrate(const TangentPair& p0, double s, double t_end, double dt);

// First phase-space return time, refined to ~1e-9 in t; checked downstream
// against 2*pi/sqrt(s^2 + kappa |v|^2) with the calibrated kappa.
double measured_period(const TangentPair& p0, double s);

double predicted_period(double s, double speed, int n);

// residual of the defining relation dE = -i_X omega_s, probed against random
// variations by finite differences
double hamiltonian_relation_residual(const TangentPair& p, double s, RandomStream& rng);

void write_trajectory_csv(const std::string& path, const PhasePathRecord& rec);

}  // namespace orbitcap::dynamics

#endif  // ORBITCAP_DYNAMICS_HPP_
