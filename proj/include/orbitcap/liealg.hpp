#ifndef ORBITCAP_LIEALG_HPP_
#define ORBITCAP_LIEALG_HPP_

#include <cstdint>

#include "orbitcap/types.hpp"

// su(n+1)/so(n+1) matrix algebra: Killing inner product, brackets, the group
// exponential and adjoint action, and seeded random sampling.

namespace orbitcap::liealg {

struct AlgebraElement {
  CMat m;
  int dim() const { return static_cast<int>(m.rows()) - 1; }

  AlgebraElement operator+(const AlgebraElement& o) const { return {m + o.m}; }
  AlgebraElement operator-(const AlgebraElement& o) const { return {m - o.m}; }
  AlgebraElement operator-() const { return {-m}; }
  AlgebraElement operator*(double a) const { return {a * m}; }
};
inline AlgebraElement operator*(double a, const AlgebraElement& x) { return {a * x.m}; }

struct GroupElement {
  CMat m;
  int dim() const { return static_cast<int>(m.rows()) - 1; }
};

// (X,Y) := -2 tr(X Y); positive definite on skew-Hermitian input.
double killing_inner(const AlgebraElement& x, const AlgebraElement& y);
double killing_norm(const AlgebraElement& x);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

// exp via eigendecomposition of the Hermitian matrix iX; exactly unitary up to
// eigensolver roundoff, which is why it is preferred over a series here.
GroupElement group_exp(const AlgebraElement& x);

// g X g^{-1}
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

// invariant residuals
double skew_hermitian_residual(const CMat& m);
double trace_residual(const CMat& m);
double unitarity_residual(const CMat& m);
double realness_residual(const CMat& m);

enum class SampleKind { algebra_su, algebra_so, group_su, group_so };

// Deterministic for fixed (kind, n, seed). Algebra samples are entrywise
// standard complex (resp. real) Gaussian projected to skew-Hermitian traceless
// (resp. real antisymmetric); group samples are exponentials of those.
AlgebraElement sample_algebra(SampleKind kind, int n, std::uint64_t seed);
GroupElement sample_group(SampleKind kind, int n, std::uint64_t seed);

AlgebraElement sample_algebra(SampleKind kind, int n, RandomStream& rng);
GroupElement sample_group(SampleKind kind, int n, RandomStream& rng);

// eigenvalues of the Hermitian matrix iX, ascending (spectrum of X is i times these, negated)
Eigen::VectorXd hermitian_spectrum(const AlgebraElement& x);

}  // namespace orbitcap::liealg

#endif  // ORBITCAP_LIEALG_HPP_
