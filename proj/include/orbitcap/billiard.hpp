#ifndef ORBITCAP_BILLIARD_HPP_
#define ORBITCAP_BILLIARD_HPP_

#include <string>
#include <utility>
#include <vector>

// The spherical billiard system in (theta, phi) charts: a rotationally
// invariant potential wall near the equator, the square-root Hamiltonian
// H = sqrt(thd^2 + sin(th)^2 phd^2 + V(th)), and a minimum-period scan over
// closed orbits below an energy cap.

namespace orbitcap::billiard {

// Plateau 0 on [0, pi/2 - eps], plateau 1 on [pi/2 - eps/2, pi/2], quintic
// smoothstep between (C^2, monotone), mirrored across the equator.
struct BilliardPotential {
  double eps = 0.1;

  double value(double theta) const;
  double dvalue(double theta) const;
};

struct BilliardState {
  double th = 0.0;
  double ph = 0.0;
  double thd = 0.0;
  double phd = 0.0;
};

double energy(const BilliardState& s, const BilliardPotential& pot);
double angular_momentum(const BilliardState& s);  // sin(theta)^2 * phd, conserved

// X_H = (X_geodesic - (grad V)^V / 2) / H in chart coordinates.
BilliardState billiard_rhs(const BilliardState& s, const BilliardPotential& pot);

// One adaptive step: RK4 with rejection when the per-step drift of H or the
// angular momentum exceeds the configured threshold (the ramp is stiff for
// small eps).  Returns the dt actually taken; suggests the next dt.
struct StepResult {
  BilliardState state;
  double dt_taken = 0.0;
  double dt_next = 0.0;
};
StepResult adaptive_step(const BilliardState& s, const BilliardPotential& pot, double dt);

// fixed-step RK4 over an exact time span (event refinement, tests)
BilliardState advance_fixed(BilliardState s, const BilliardPotential& pot, double span,
                            double dt_hint);

struct ScanSpec {
  int theta_samples = 50;
  std::vector<double> energies = {0.55, 0.70, 0.85, 0.94};
  // azimuth-advance resonance targets (p, q): closed after q radial periods
  // and p full turns
  std::vector<std::pair<int, int>> targets = {{1, 3}, {1, 4}, {2, 5}, {1, 5},
                                              {2, 7}, {3, 7}, {1, 6}, {3, 8}};
  int circular_samples = 25;
  double time_budget = 6.0 * 3.14159265358979323846;  // 3 x 2 pi
};

struct PeriodicOrbit {
  double period = 0.0;
  double energy = 0.0;
  double theta_min = 0.0;
  double return_residual = 0.0;
  double angmom_drift = 0.0;
  std::string family;  // "circular", "meridian", "resonant p/q"
};

struct ScanResult {
  double min_period = 0.0;
  double bound = 0.0;  // 2 pi (1 - sqrt(eps))
  int probed = 0;
  int periodic = 0;
  int excluded = 0;  // non-returning probes within the budget
  double max_angmom_drift = 0.0;
  std::vector<PeriodicOrbit> orbits;
};

// Integrates a grid of initial conditions with H < energy_cap, detects closed
// orbits (phase-space return < 1e-6 after resonance shooting on the azimuth
// advance per radial period), and returns the minimal verified period.
ScanResult billiard_min_period(double eps, double energy_cap, const ScanSpec& spec = {});

void write_scan_csv(const std::string& path, const std::vector<double>& eps_values,
                    const std::vector<ScanResult>& results);

}  // namespace orbitcap::billiard

#endif  // ORBITCAP_BILLIARD_HPP_
