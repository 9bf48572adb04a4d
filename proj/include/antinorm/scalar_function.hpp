#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "antinorm/error.hpp"

namespace antinorm {

enum class FnProperty : unsigned {
  Convex = 1u << 0,
  Concave = 1u << 1,
  Superadditive = 1u << 2,
  LogConcave = 1u << 3,
  NonDecreasing = 1u << 4,
  ZeroAtZero = 1u << 5,
};

constexpr unsigned fn_flag(FnProperty p) { return static_cast<unsigned>(p); }

/// Scalar function on [0, t_max] with declared structural properties. Declared
/// flags are promises checked by the numeric verifiers, not proofs.
struct ScalarFunction {
  std::function<double(double)> eval;
  unsigned flags = 0;
  std::string description;
  double t_max = 1e3;
  bool class_s = false;

  double operator()(double t) const { return eval(t); }
  bool has(FnProperty p) const { return (flags & fn_flag(p)) != 0; }
  ScalarFunction with(unsigned extra) const {
    ScalarFunction g = *this;
    g.flags |= extra;
    return g;
  }
};

struct PropertyCheck {
  FnProperty property;
  bool confirmed = false;
  double witness_a = 0.0;  // refutation point / pair
  double witness_b = 0.0;
  std::string detail;
};

/// Log-spaced grid on (1e-6, t_max].
std::vector<double> default_grid(const ScalarFunction& f, int points = 2000);

/// Confirms or refutes each of the six properties on the grid (chord tests for
/// convex/concave/log-concave, consecutive comparisons for monotonicity,
/// sampled pairs for superadditivity and the log-concavity midpoint test).
std::vector<PropertyCheck> verify_properties(const ScalarFunction& f,
                                             const std::vector<double>& grid,
                                             double tol = 1e-9,
                                             std::uint64_t seed = 0x5eed);

/// Throws Precondition when a declared flag is refuted numerically.
void require_declared_properties(const ScalarFunction& f);

/// Verifies the required properties on the default grid and stamps them onto
/// the function; refutation raises Precondition. For parsed expressions whose
/// structure is not known a priori.
ScalarFunction with_verified_properties(ScalarFunction f, unsigned required);

/// f superadditive + log-concave composed with g superadditive + convex +
/// zero-at-zero: superadditive, non-decreasing and zero at zero.
ScalarFunction compose_class_s(const ScalarFunction& f, const ScalarFunction& g);

/// g_m(t) = t^m / (1 + t + ... + t^{m-1}) = (sum_{k=1}^m t^-k)^-1; convex with
/// g_m(0) = 0.
ScalarFunction inverse_power_sum_function(int m);

// Catalogue.
ScalarFunction fn_identity();
ScalarFunction fn_power(double p);           // t^p, p >= 1
ScalarFunction fn_angle(double alpha);       // (t - alpha)_+
ScalarFunction fn_t_arctan();                // t arctan t
ScalarFunction fn_sinh_pow(double gamma);    // sinh t^gamma, gamma > 1
ScalarFunction fn_t_exp_pow(double gamma);   // t exp t^gamma, gamma > 1
ScalarFunction fn_min_pow(double a, double b);      // min{t^a, t^b}, 1 <= a < b
ScalarFunction fn_pow_exp_inv(double a, double b);  // t^a exp(-1/t^b)
ScalarFunction fn_step_angle(double a, double b);   // (t-a) 1_[b,inf), 0 < a < b
ScalarFunction fn_sqrt();

/// Small arithmetic grammar: t, numbers, + - * / ^, min, max, exp, log, sinh,
/// arctan, sqrt, indicator(x, b). No flags are declared on the result.
ScalarFunction parse_scalar_function(const std::string& expr);

}  // namespace antinorm
