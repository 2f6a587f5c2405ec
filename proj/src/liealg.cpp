#include "orbitcap/liealg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace orbitcap {

Tolerances& Tolerances::active() {
  static Tolerances t;
  return t;
}

std::map<std::string, double*> Tolerances::registry() {
  return {
      {"algebraic", &algebraic},
      {"exponential", &exponential},
      {"membership", &membership},
      {"tangency", &tangency},
      {"antidiagonal", &antidiagonal},
      {"quadric", &quadric},
      {"fd_step", &fd_step},
      {"newton", &newton},
      {"period_return", &period_return},
      {"integrator_drift", &integrator_drift},
      {"billiard_step_drift", &billiard_step_drift},
  };
}

bool Tolerances::set(const std::string& key, double value) {
  auto reg = registry();
  auto it = reg.find(key);
  if (it == reg.end()) return false;
  *it->second = value;
  return true;
}

double RandomStream::uniform() {
  // 53-bit mantissa from the raw 64-bit draw
  return (state_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double rad = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * M_PI * u2;
  spare_ = rad * std::sin(ang);
  have_spare_ = true;
  return rad * std::cos(ang);
}

cplx RandomStream::complex_gaussian() {
  double re = gaussian();
  double im = gaussian();
  return cplx(re * M_SQRT1_2, im * M_SQRT1_2);
}

}  // namespace orbitcap

namespace orbitcap::liealg {

namespace {

void check_same_dim(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dimension mismatch");
}

}  // namespace

double killing_inner(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_dim(x.m, y.m);
  return -2.0 * (x.m * y.m).trace().real();
}

double killing_norm(const AlgebraElement& x) {
  double q = killing_inner(x, x);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  check_same_dim(x.m, y.m);
  return {x.m * y.m - y.m * x.m};
}

GroupElement group_exp(const AlgebraElement& x) {
  // iX is Hermitian for skew-Hermitian X; symmetrize to shed roundoff so the
  // result is unitary to eigensolver precision.
  CMat h = cplx(0, 1) * x.m;
  h = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed in group_exp");
  CVec phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(cplx(0, -es.eigenvalues()(k)));
  return {es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  check_same_dim(g.m, x.m);
  return {g.m * x.m * g.m.adjoint()};
}

double skew_hermitian_residual(const CMat& m) { return (m + m.adjoint()).cwiseAbs().maxCoeff(); }

double trace_residual(const CMat& m) { return std::abs(m.trace()); }

double unitarity_residual(const CMat& m) {
  return (m * m.adjoint() - CMat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double realness_residual(const CMat& m) { return m.imag().cwiseAbs().maxCoeff(); }

AlgebraElement sample_algebra(SampleKind kind, int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("dimension index must be >= 1");
  const int d = n + 1;
  CMat g(d, d);
  const bool real = (kind == SampleKind::algebra_so || kind == SampleKind::group_so);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = real ? cplx(rng.gaussian(), 0.0) : rng.complex_gaussian();
  CMat x = 0.5 * (g - g.adjoint().eval());
  if (!real) x -= (x.trace() / double(d)) * CMat::Identity(d, d);  // real antisymmetric is already traceless
  return {x};
}

GroupElement sample_group(SampleKind kind, int n, RandomStream& rng) {
  SampleKind alg = (kind == SampleKind::group_so || kind == SampleKind::algebra_so)
                       ? SampleKind::algebra_so
                       : SampleKind::algebra_su;
  GroupElement g = group_exp(sample_algebra(alg, n, rng));
  if (alg == SampleKind::algebra_so) g.m = g.m.real().cast<cplx>();  // exp of real stays real
  return g;
}

AlgebraElement sample_algebra(SampleKind kind, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_algebra(kind, n, rng);
}

GroupElement sample_group(SampleKind kind, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_group(kind, n, rng);
}

Eigen::VectorXd hermitian_spectrum(const AlgebraElement& x) {
  CMat h = cplx(0, 1) * x.m;
  h = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  return es.eigenvalues();
}

}  // namespace orbitcap::liealg
