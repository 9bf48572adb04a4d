#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "antinorm/gauges.hpp"
#include "antinorm/majorization.hpp"
#include "antinorm/orbit.hpp"
#include "antinorm/scalar_function.hpp"

namespace antinorm {

struct InequalityReport {
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // oriented so >= 0 means the inequality holds
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t fingerprint = 0;  // hash of the serialized inputs
  std::uint64_t seed = 0;
  std::string note;
};

struct SuiteConfig {
  int trials = 200;
  std::vector<int> dims = {2, 3, 4, 5, 6};
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::vector<std::string> cases;  // empty = all
  int jobs = 1;
  std::string scale_b;  // equivalence case override: named analytic scale
};

struct CaseSummary {
  std::string case_id;
  int trials = 0;
  int failures = 0;
  double min_margin = 0.0;
  double runtime_s = 0.0;
};

struct SuiteResult {
  std::vector<InequalityReport> reports;
  std::vector<CaseSummary> summary;
  bool all_pass() const;
};

std::vector<std::string> suite_case_names();
SuiteResult run_suite(const SuiteConfig& cfg);

std::string report_to_json_line(const InequalityReport& r);
std::string summary_to_csv(const SuiteResult& r);

// Individual checks; pass/margin semantics are relative to
// max(|lhs|, |rhs|, 1).

/// anti(g(A+B)) >= anti(g(A)) + anti(g(B)) for convex g with g(0) = 0.
InequalityReport check_superadditivity(const AntiNormSpec& a,
                                       const ScalarFunction& g,
                                       const HermitianMatrix& A,
                                       const HermitianMatrix& B,
                                       double tol = 1e-9);

/// Same with psi from the composed superadditive class; Derived kinds only.
InequalityReport check_class_s_superadditivity(const AntiNormSpec& a,
                                               const ScalarFunction& psi,
                                               const HermitianMatrix& A,
                                               const HermitianMatrix& B,
                                               double tol = 1e-9);

/// prod_i gauge((A+B)^-p_i)^-1 >= same at A plus same at B, sum p_i >= 1.
InequalityReport check_product_inequality(const SymmetricGauge& g,
                                          const std::vector<double>& ps,
                                          const HermitianMatrix& A,
                                          const HermitianMatrix& B,
                                          double tol = 1e-9);

/// gauge(sum_k (A+B)^-k)^-1 >= gauge(sum_k A^-k)^-1 + gauge(sum_k B^-k)^-1.
InequalityReport check_inverse_power_sum(const SymmetricGauge& g, int m,
                                         const HermitianMatrix& A,
                                         const HermitianMatrix& B,
                                         double tol = 1e-9);

/// (e_m/e_{m-1} of g(lambda)^q)^{1/q} superadditive; Rotfel'd at m = q = 1.
InequalityReport check_marcus_lopes_ratio(const ScalarFunction& g, double q,
                                          int m, const HermitianMatrix& A,
                                          const HermitianMatrix& B,
                                          double tol = 1e-9);

/// tau(g^p) / tau(psi^{p-1}) superadditive for p in (0,1].
InequalityReport check_trace_ratio(const ScalarFunction& g,
                                   const ScalarFunction& psi, double p,
                                   const HermitianMatrix& A,
                                   const HermitianMatrix& B, double tol = 1e-9);

/// Determinant bound for sqrt(psi * omega), including the geometric-mean
/// identity as an internal cross-check.
InequalityReport check_det_minkowski(const ScalarFunction& psi,
                                     const ScalarFunction& omega,
                                     const HermitianMatrix& A,
                                     const HermitianMatrix& B,
                                     double tol = 1e-9);

/// Bidirectional: when the tail log-integrals are ordered, the whole
/// (t, p)-grid of derived values must be ordered; when they are not, a small-p
/// derived gap must detect it. Divergent b-integrals at all p flag the
/// instance as out of scope.
InequalityReport check_equivalence(const SpectralScale& a, const AnyScale& b,
                                   double tol = 1e-9);

struct TruncationCounterexample {
  HermitianMatrix a;
  HermitianMatrix b;
  double lhs;  // Tr min(A+B, 1)
  double rhs;  // Tr min(A,1) + Tr min(B,1)
  double gap;  // rhs - lhs
};

/// Fixed 2x2 pair where truncation breaks trace superadditivity.
TruncationCounterexample counterexample_trace_truncation();

}  // namespace antinorm
