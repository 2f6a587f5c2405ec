#ifndef ORBITCAP_TYPES_HPP_
#define ORBITCAP_TYPES_HPP_

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace orbitcap {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Residual tolerances are configuration values, not hard-coded constants.
// Graded defaults: 1e-12 for algebraic identities, 1e-10 for anything routed
// through a matrix exponential or eigensolver.
struct Tolerances {
  double algebraic = 1e-12;
  double exponential = 1e-10;
  double membership = 1e-9;
  double tangency = 1e-10;
  double antidiagonal = 1e-8;
  double quadric = 1e-8;
  double fd_step = 1e-5;
  double newton = 1e-13;
  double period_return = 1e-6;
  double integrator_drift = 1e-5;   // abort threshold for constraint drift
  double billiard_step_drift = 1e-10;

  static Tolerances& active();
  // "KEY=VAL" style override; returns false for unknown keys.
  bool set(const std::string& key, double value);
  std::map<std::string, double*> registry();
};

// Deterministic stream: mt19937_64 + hand-rolled Box-Muller so that byte-level
// reproducibility does not depend on the standard library's distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  double uniform();                // [0,1)
  double gaussian();               // N(0,1)
  cplx complex_gaussian();         // independent N(0,1/sqrt2) parts, E|z|^2 = 1

 private:
  std::mt19937_64 state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace orbitcap

#endif  // ORBITCAP_TYPES_HPP_
