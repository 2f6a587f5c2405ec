#ifndef ORBITCAP_VERIFY_HPP_
#define ORBITCAP_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

// Named invariant suites shared by the CLI `verify` subcommand and the test
// binaries.  Each suite runs a batch of seeded samples and reports its worst
// residual against the configured tolerance.

namespace orbitcap::verify {

struct SuiteResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct Options {
  int n = 2;
  std::uint64_t seed = 1;
  int samples = 100;
  bool heavy = true;  // include the finite-difference pullback suites
};

std::vector<SuiteResult> run_all(const Options& opt);

// individual suites (each returns its result; names are stable CLI output)
SuiteResult killing_positive_definite(const Options&);
SuiteResult bracket_jacobi(const Options&);
SuiteResult ad_invariance(const Options&);
SuiteResult ad_bracket_compat(const Options&);
SuiteResult exp_one_parameter(const Options&);
SuiteResult sample_invariants(const Options&);
SuiteResult j_squared(const Options&);
SuiteResult bridge_naturality(const Options&);
SuiteResult tangent_projection(const Options&);
SuiteResult geodesic_speed(const Options&);
SuiteResult prime_length_homogeneity(const Options&);
SuiteResult rp_closure(const Options&);
SuiteResult lambda_pairing(const Options&);
SuiteResult two_form_nondegenerate(const Options&);
SuiteResult twisted_reduces_at_zero(const Options&);
SuiteResult involution_antiholomorphic(const Options&);
SuiteResult moment_equivariance(const Options&);
SuiteResult moment_conservation(const Options&);
SuiteResult cut_function_regularity(const Options&);
SuiteResult cut_jacobian_identity(const Options&);
SuiteResult cut_boundary_behavior(const Options&);
SuiteResult triangle_cp(const Options&);
SuiteResult triangle_rp(const Options&);
SuiteResult roundtrip_cp(const Options&);
SuiteResult roundtrip_rp(const Options&);
SuiteResult equivariance_cutmaps(const Options&);
SuiteResult pullback_cp(const Options&);
SuiteResult pullback_rp(const Options&);
SuiteResult capacity_brackets(const Options&);

}  // namespace orbitcap::verify

#endif  // ORBITCAP_VERIFY_HPP_
