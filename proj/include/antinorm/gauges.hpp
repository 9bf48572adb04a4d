#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "antinorm/scalar_function.hpp"
#include "antinorm/spectral_scale.hpp"

namespace antinorm {

/// Fully symmetric norm specified by its action on s-number scales.
struct SymmetricGauge {
  enum class Kind { KyFan, Schatten, OperatorSup, Mixture, QLift };

  Kind kind = Kind::KyFan;
  double t = 1.0;  // KyFan, t in (0,1]
  double p = 1.0;  // Schatten, p >= 1
  std::vector<std::pair<double, SymmetricGauge>> terms;  // Mixture, weights > 0
  std::shared_ptr<SymmetricGauge> inner;                 // QLift

  static SymmetricGauge ky_fan(double t);
  static SymmetricGauge schatten(double p);
  static SymmetricGauge operator_sup();
  static SymmetricGauge mixture(std::vector<std::pair<double, SymmetricGauge>> terms);
  std::string describe() const;
};

/// a -> g(a^2)^(1/2); on operators X this is g(X*X)^(1/2).
SymmetricGauge qnorm_lift(const SymmetricGauge& g);

double norm_eval(const SymmetricGauge& g, const SpectralScale& a);
double norm_eval(const SymmetricGauge& g, const Matrix& x);

/// Tagged anti-norm family on positive operators.
struct AntiNormSpec {
  enum class Kind {
    Derived,       // gauge of the (-p)-th power, to the -1/p
    TailIntegral,  // integral of lambda over (1-t, 1)
    LogMean,       // exp of the mean log over (1-t, 1)
    FKDet,         // LogMean at t = 1
    SchattenQ,     // (normalized trace of A^q)^(1/q), q in (0,1]
    MarcusLopes,   // e_m / e_{m-1} of the eigenvalues (matrix only)
    PowerCompose,  // inner(A^q)^(1/q), q in (0,1)
  };

  Kind kind = Kind::FKDet;
  double t = 1.0;
  double p = 1.0;
  double q = 1.0;
  int m = 1;
  SymmetricGauge gauge;                 // Derived
  std::shared_ptr<AntiNormSpec> inner;  // PowerCompose

  static AntiNormSpec derived(SymmetricGauge g, double p);
  static AntiNormSpec tail_integral(double t);
  static AntiNormSpec log_mean(double t);
  static AntiNormSpec fk_det();
  static AntiNormSpec schatten_q(double q);
  static AntiNormSpec marcus_lopes(int m);
  static AntiNormSpec power_compose(double q, AntiNormSpec inner);

  bool needs_matrix() const;
  bool is_derived_kind() const;  // Derived or PowerCompose over Derived
  std::string describe() const;
};

struct AntiNormValue {
  double value = 0.0;
  bool degenerate = false;  // Marcus-Lopes with e_{m-1} = 0
};

AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const SpectralScale& s);
AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const HermitianMatrix& m);
AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const AnalyticScale& s);
AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const AnyScale& s);

double antinorm_eval(const AntiNormSpec& a, const SpectralScale& s);
double antinorm_eval(const AntiNormSpec& a, const HermitianMatrix& m);
double antinorm_eval(const AntiNormSpec& a, const AnyScale& s);

struct LimitCheckReport {
  std::vector<double> values;
  double target = 0.0;
  bool monotone = false;
  bool converged = false;
  bool hypothesis_violated = false;
};

/// Values of gauge((A + eps I)^-p)^(-1/p) along a decreasing eps grid: checks
/// the non-increasing approach and agreement of the last value with the direct
/// evaluation.
LimitCheckReport derived_limit_check(const SymmetricGauge& g, double p,
                                     const HermitianMatrix& a,
                                     const std::vector<double>& eps_grid,
                                     double tol = 1e-6);

/// Values of ((1/t) integral of lambda^-p over (1-t,1))^(-1/p) along a
/// decreasing p grid: checks the monotone approach to the log-mean value.
/// Divergent integrals at every grid p flag the hypothesis as violated.
LimitCheckReport delta_limit_check(double t, const AnyScale& a,
                                   const std::vector<double>& p_grid,
                                   double tol = 1e-3);

struct BoundCheck {
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  double scale = 1.0;
  bool pass(double tol) const {
    return lower_margin >= -tol * scale && upper_margin >= -tol * scale;
  }
};

/// trace-norm * gauge(1) <= gauge <= operator-norm * gauge(1).
BoundCheck sandwich_check(const SymmetricGauge& g, const Matrix& x);
/// min-eigenvalue * anti(1) <= anti <= normalized-trace * anti(1).
BoundCheck sandwich_check(const AntiNormSpec& a, const HermitianMatrix& m);

/// gauge(X*X)^(1/2) gauge(Y*Y)^(1/2) - gauge(X*Y); >= 0 when the inequality holds.
double cauchy_schwarz_margin(const SymmetricGauge& g, const Matrix& x,
                             const Matrix& y);

}  // namespace antinorm
