#ifndef ORBITCAP_CALIBRATION_HPP_
#define ORBITCAP_CALIBRATION_HPP_

namespace orbitcap::calib {

enum class Space { CP, RP };

// Measured once per (space, n) and cached: the prime geodesic length l (first
// return of a unit-speed geodesic, refined to 1e-12) and the curvature
// constant kappa = (2*pi/l)^2 it implies.  Every capacity figure downstream is
// reported in units of l so nothing depends on the model's internal
// normalization.
struct ModelConstants {
  double prime_length = 0.0;
  double kappa = 0.0;
};

const ModelConstants& constants(Space space, int n);

// direct measurement (uncached), exposed for the homogeneity invariant test
double measure_prime_length(Space space, int n, unsigned seed);

}  // namespace orbitcap::calib

#endif  // ORBITCAP_CALIBRATION_HPP_
