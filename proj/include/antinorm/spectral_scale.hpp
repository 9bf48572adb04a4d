#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "antinorm/linalg.hpp"

namespace antinorm {

/// Non-increasing right-continuous step function on (0,1) with unit total
/// width: the spectral scale of an operator under the normalized trace.
class SpectralScale {
public:
  struct Step {
    double width;
    double value;
  };

  SpectralScale() : steps_{{1.0, 0.0}} {}

  /// Validates: widths > 0, values non-increasing, total width 1 (to 1e-12).
  /// Adjacent steps with equal values are merged.
  static SpectralScale from_steps(std::vector<Step> steps);

  /// Values sorted non-increasing, equal widths 1/n (merged).
  static SpectralScale from_values_desc(const std::vector<double>& values);

  static SpectralScale constant(double c) { return from_steps({{1.0, c}}); }

  const std::vector<Step>& steps() const { return steps_; }

  /// lambda_t, right-continuous; t >= 1 yields the final (minimal) value.
  double value_at(double t) const;
  double max_value() const { return steps_.front().value; }
  double min_value() const { return steps_.back().value; }
  bool touches_zero(double tol = 0.0) const { return min_value() <= tol; }

  /// Cumulative step ends strictly inside (0,1).
  std::vector<double> interior_breakpoints() const;

  /// Exact partial sums of the step function.
  double head_integral(double t) const;
  double tail_integral(double t) const;
  /// May be -inf when a zero value lies in (t,1). Throws Domain on negatives.
  double tail_log_integral(double t) const;
  double total_integral() const { return head_integral(1.0); }

private:
  std::vector<Step> steps_;
};

/// Scale given by an evaluator on (0,1), declared non-increasing
/// (spot-checked on a 1e3-point grid at construction). An analytic log can be
/// supplied alongside: near an endpoint where the value underflows to zero,
/// log(value(t)) is useless while the analytic form stays exact.
class AnalyticScale {
public:
  AnalyticScale(std::function<double(double)> value, std::string description);
  AnalyticScale(std::function<double(double)> value,
                std::function<double(double)> log_value, std::string description);
  double operator()(double t) const { return value_(t); }
  bool has_log() const { return static_cast<bool>(log_value_); }
  double log_at(double t) const;
  const std::string& description() const { return description_; }

private:
  std::function<double(double)> value_;
  std::function<double(double)> log_value_;
  std::string description_;
};

using AnyScale = std::variant<SpectralScale, AnalyticScale>;

enum class IntegralMode { Plain, Log, NegPower };

struct IntegralResult {
  enum class Kind { Finite, Divergent, NegInfinite };
  Kind kind = Kind::Finite;
  double value = 0.0;

  bool finite() const { return kind == Kind::Finite; }
  static IntegralResult divergent() { return {Kind::Divergent, 0.0}; }
  static IntegralResult neg_infinite() { return {Kind::NegInfinite, 0.0}; }
};

/// Closed-form step sums. Log of a zero value => NegInfinite; zero under a
/// negative power => Divergent (0^-p = inf). Negative values are a domain error
/// in Log / NegPower modes.
IntegralResult scale_integral(const SpectralScale& a, double lo, double hi,
                              IntegralMode mode, double p = 1.0);

/// Adaptive quadrature with dyadic refinement toward both endpoints.
/// Divergence certificate: a point evaluation beyond 1e12 in magnitude or an
/// accumulated sum beyond 1e9 stops integration with Divergent / NegInfinite.
IntegralResult scale_integral(const AnalyticScale& a, double lo, double hi,
                              IntegralMode mode, double p = 1.0);

IntegralResult scale_integral(const AnyScale& a, double lo, double hi,
                              IntegralMode mode, double p = 1.0);

/// Eigenvalues sorted non-increasing with width 1/n each.
SpectralScale spectral_scale(const HermitianMatrix& a);

/// Spectral scale of |X| (generalized s-numbers), via the polar decomposition.
SpectralScale s_numbers(const Matrix& x);

/// Pointwise min(value, s), adjacent equal steps merged.
SpectralScale truncate(const SpectralScale& a, double s);

/// Values mapped through f. Order is preserved when f is declared
/// non-decreasing, otherwise steps are re-sorted with widths carried along.
SpectralScale apply_function(const SpectralScale& a,
                             const std::function<double(double)>& f,
                             bool non_decreasing, const char* fname = "f");

/// Pointwise sum on the merged breakpoint grid.
SpectralScale add(const SpectralScale& a, const SpectralScale& b);
SpectralScale scaled(const SpectralScale& a, double c);

/// Named analytic scales usable from the CLI ("exp_inv_sqrt", ...).
AnalyticScale named_analytic_scale(const std::string& id);
std::vector<std::string> analytic_scale_names();

}  // namespace antinorm
