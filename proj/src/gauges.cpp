#include "antinorm/gauges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace antinorm {

namespace {

constexpr double kPsdClampTol = 1e-10;

/// Clamp eigenvalue-level negatives within tolerance to zero; larger negatives
/// are a precondition failure.
SpectralScale clamp_psd(const SpectralScale& a) {
  const double mn = a.min_value();
  if (mn >= 0) return a;
  if (mn < -kPsdClampTol)
    fail(ErrorCode::Precondition,
         "input is not positive semidefinite: least value " + std::to_string(mn));
  std::vector<SpectralScale::Step> steps;
  for (const auto& st : a.steps())
    steps.push_back({st.width, std::max(st.value, 0.0)});
  return SpectralScale::from_steps(std::move(steps));
}

}  // namespace

SymmetricGauge SymmetricGauge::ky_fan(double t) {
  if (!(t > 0 && t <= 1.0))
    fail(ErrorCode::InvalidArgument, "Ky Fan parameter must lie in (0,1]");
  SymmetricGauge g;
  g.kind = Kind::KyFan;
  g.t = t;
  return g;
}

SymmetricGauge SymmetricGauge::schatten(double p) {
  if (!(p >= 1.0))
    fail(ErrorCode::InvalidArgument, "Schatten exponent must be >= 1");
  SymmetricGauge g;
  g.kind = Kind::Schatten;
  g.p = p;
  return g;
}

SymmetricGauge SymmetricGauge::operator_sup() {
  SymmetricGauge g;
  g.kind = Kind::OperatorSup;
  return g;
}

SymmetricGauge SymmetricGauge::mixture(
    std::vector<std::pair<double, SymmetricGauge>> terms) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "mixture needs terms");
  for (const auto& [w, g] : terms)
    if (!(w > 0)) fail(ErrorCode::InvalidArgument, "mixture weights must be > 0");
  SymmetricGauge g;
  g.kind = Kind::Mixture;
  g.terms = std::move(terms);
  return g;
}

std::string SymmetricGauge::describe() const {
  switch (kind) {
    case Kind::KyFan: return "kyfan(" + std::to_string(t) + ")";
    case Kind::Schatten: return "schatten(" + std::to_string(p) + ")";
    case Kind::OperatorSup: return "opsup";
    case Kind::Mixture: {
      std::string s = "mixture(";
      for (const auto& [w, g] : terms) s += std::to_string(w) + "*" + g.describe() + ",";
      s += ")";
      return s;
    }
    case Kind::QLift: return "qlift(" + inner->describe() + ")";
  }
  return "?";
}

SymmetricGauge qnorm_lift(const SymmetricGauge& g) {
  SymmetricGauge lifted;
  lifted.kind = SymmetricGauge::Kind::QLift;
  lifted.inner = std::make_shared<SymmetricGauge>(g);
  return lifted;
}

double norm_eval(const SymmetricGauge& g, const SpectralScale& a) {
  switch (g.kind) {
    case SymmetricGauge::Kind::KyFan:
      return a.head_integral(g.t);
    case SymmetricGauge::Kind::Schatten: {
      double acc = 0;
      for (const auto& st : a.steps())
        acc += st.width * std::pow(std::abs(st.value), g.p);
      return std::pow(acc, 1.0 / g.p);
    }
    case SymmetricGauge::Kind::OperatorSup:
      return std::abs(a.max_value());
    case SymmetricGauge::Kind::Mixture: {
      double acc = 0;
      for (const auto& [w, sub] : g.terms) acc += w * norm_eval(sub, a);
      return acc;
    }
    case SymmetricGauge::Kind::QLift: {
      const SpectralScale squared =
          apply_function(a, [](double v) { return v * v; }, false, "square");
      return std::sqrt(norm_eval(*g.inner, squared));
    }
  }
  return 0;
}

double norm_eval(const SymmetricGauge& g, const Matrix& x) {
  return norm_eval(g, s_numbers(x));
}

AntiNormSpec AntiNormSpec::derived(SymmetricGauge g, double p) {
  if (!(p > 0)) fail(ErrorCode::InvalidArgument, "derived exponent must be > 0");
  AntiNormSpec a;
  a.kind = Kind::Derived;
  a.gauge = std::move(g);
  a.p = p;
  return a;
}

AntiNormSpec AntiNormSpec::tail_integral(double t) {
  if (!(t >= 1e-6 && t < 1.0))
    fail(ErrorCode::InvalidArgument, "tail parameter must lie in [1e-6, 1)");
  AntiNormSpec a;
  a.kind = Kind::TailIntegral;
  a.t = t;
  return a;
}

AntiNormSpec AntiNormSpec::log_mean(double t) {
  if (!(t >= 1e-6 && t <= 1.0))
    fail(ErrorCode::InvalidArgument, "log-mean parameter must lie in [1e-6, 1]");
  AntiNormSpec a;
  a.kind = Kind::LogMean;
  a.t = t;
  return a;
}

AntiNormSpec AntiNormSpec::fk_det() {
  AntiNormSpec a;
  a.kind = Kind::FKDet;
  a.t = 1.0;
  return a;
}

AntiNormSpec AntiNormSpec::schatten_q(double q) {
  if (!(q > 0 && q <= 1.0))
    fail(ErrorCode::InvalidArgument, "q must lie in (0,1]");
  AntiNormSpec a;
  a.kind = Kind::SchattenQ;
  a.q = q;
  return a;
}

AntiNormSpec AntiNormSpec::marcus_lopes(int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  AntiNormSpec a;
  a.kind = Kind::MarcusLopes;
  a.m = m;
  return a;
}

AntiNormSpec AntiNormSpec::power_compose(double q, AntiNormSpec inner) {
  if (!(q > 0 && q < 1.0))
    fail(ErrorCode::InvalidArgument, "compose exponent must lie in (0,1)");
  AntiNormSpec a;
  a.kind = Kind::PowerCompose;
  a.q = q;
  a.inner = std::make_shared<AntiNormSpec>(std::move(inner));
  return a;
}

bool AntiNormSpec::needs_matrix() const {
  if (kind == Kind::MarcusLopes) return true;
  if (kind == Kind::PowerCompose) return inner->needs_matrix();
  return false;
}

bool AntiNormSpec::is_derived_kind() const {
  if (kind == Kind::Derived) return true;
  if (kind == Kind::PowerCompose) return inner->is_derived_kind();
  return false;
}

std::string AntiNormSpec::describe() const {
  switch (kind) {
    case Kind::Derived:
      return "derived(" + gauge.describe() + ",p=" + std::to_string(p) + ")";
    case Kind::TailIntegral: return "tail(" + std::to_string(t) + ")";
    case Kind::LogMean: return "logmean(" + std::to_string(t) + ")";
    case Kind::FKDet: return "fkdet";
    case Kind::SchattenQ: return "schattenq(" + std::to_string(q) + ")";
    case Kind::MarcusLopes: return "marcuslopes(" + std::to_string(m) + ")";
    case Kind::PowerCompose:
      return "powercompose(q=" + std::to_string(q) + "," + inner->describe() + ")";
  }
  return "?";
}

AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const SpectralScale& raw) {
  const SpectralScale s = clamp_psd(raw);
  switch (a.kind) {
    case AntiNormSpec::Kind::Derived: {
      if (s.touches_zero()) return {0.0, false};  // singular input
      const SpectralScale mapped = apply_function(
          s, [&](double v) { return std::pow(v, -a.p); }, false, "neg power");
      const double g = norm_eval(a.gauge, mapped);
      if (!std::isfinite(g)) return {0.0, false};
      return {std::pow(g, -1.0 / a.p), false};
    }
    case AntiNormSpec::Kind::TailIntegral:
      return {s.tail_integral(1.0 - a.t), false};
    case AntiNormSpec::Kind::LogMean:
    case AntiNormSpec::Kind::FKDet: {
      const double L = s.tail_log_integral(1.0 - a.t);
      if (std::isinf(L)) return {0.0, false};
      return {std::exp(L / a.t), false};
    }
    case AntiNormSpec::Kind::SchattenQ: {
      double acc = 0;
      for (const auto& st : s.steps()) acc += st.width * std::pow(st.value, a.q);
      return {std::pow(acc, 1.0 / a.q), false};
    }
    case AntiNormSpec::Kind::MarcusLopes:
      fail(ErrorCode::Unsupported,
           "marcuslopes needs a matrix input (the dimension enters through the "
           "antisymmetric powers)");
    case AntiNormSpec::Kind::PowerCompose: {
      const SpectralScale powered = apply_function(
          s, [&](double v) { return std::pow(v, a.q); }, true, "power");
      const AntiNormValue innerv = antinorm_eval_detail(*a.inner, powered);
      return {std::pow(innerv.value, 1.0 / a.q), innerv.degenerate};
    }
  }
  return {0.0, false};
}

AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const HermitianMatrix& m) {
  const std::vector<double> raw = eigenvalues_desc(m);
  if (raw.back() < -kPsdClampTol)
    fail(ErrorCode::Precondition,
         "input is not positive semidefinite: least eigenvalue " +
             std::to_string(raw.back()));
  std::vector<double> eigs = raw;
  for (double& v : eigs) v = std::max(v, 0.0);

  switch (a.kind) {
    case AntiNormSpec::Kind::MarcusLopes: {
      const int n = m.n();
      if (a.m > n)
        fail(ErrorCode::InvalidArgument,
             "marcuslopes order " + std::to_string(a.m) + " exceeds dimension " +
                 std::to_string(n));
      const double em = elementary_symmetric(eigs, a.m);
      const double em1 = elementary_symmetric(eigs, a.m - 1);
      if (em1 <= 0.0) return {0.0, true};  // rank below m-1: continuity limit
      return {em / em1, false};
    }
    case AntiNormSpec::Kind::PowerCompose:
      if (a.needs_matrix()) {
        std::vector<double> powered = eigs;
        for (double& v : powered) v = std::pow(v, a.q);
        const HermitianMatrix pm(Matrix::diagonal(powered));
        const AntiNormValue innerv = antinorm_eval_detail(*a.inner, pm);
        return {std::pow(innerv.value, 1.0 / a.q), innerv.degenerate};
      }
      [[fallthrough]];
    default:
      return antinorm_eval_detail(a, SpectralScale::from_values_desc(eigs));
  }
}

AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const AnalyticScale& s) {
  switch (a.kind) {
    case AntiNormSpec::Kind::Derived: {
      if (a.gauge.kind != SymmetricGauge::Kind::KyFan)
        fail(ErrorCode::Unsupported,
             "analytic scales support derived anti-norms over the Ky Fan family");
      const IntegralResult r =
          scale_integral(s, 1.0 - a.gauge.t, 1.0, IntegralMode::NegPower, a.p);
      if (!r.finite()) return {0.0, false};
      return {std::pow(r.value, -1.0 / a.p), false};
    }
    case AntiNormSpec::Kind::TailIntegral: {
      const IntegralResult r = scale_integral(s, 1.0 - a.t, 1.0, IntegralMode::Plain);
      if (!r.finite()) fail(ErrorCode::Domain, "tail integral did not converge");
      return {r.value, false};
    }
    case AntiNormSpec::Kind::LogMean:
    case AntiNormSpec::Kind::FKDet: {
      const IntegralResult r = scale_integral(s, 1.0 - a.t, 1.0, IntegralMode::Log);
      if (r.kind == IntegralResult::Kind::NegInfinite) return {0.0, false};
      if (r.kind == IntegralResult::Kind::Divergent)
        fail(ErrorCode::Domain, "log integral diverged upward");
      return {std::exp(r.value / a.t), false};
    }
    case AntiNormSpec::Kind::SchattenQ: {
      const AnalyticScale powered(
          [f = s, q = a.q](double t) { return std::pow(std::max(f(t), 0.0), q); },
          "powered");
      const IntegralResult r = scale_integral(powered, 0.0, 1.0, IntegralMode::Plain);
      if (!r.finite()) fail(ErrorCode::Domain, "q-norm integral did not converge");
      return {std::pow(r.value, 1.0 / a.q), false};
    }
    default:
      fail(ErrorCode::Unsupported,
           "anti-norm kind unsupported on analytic scales: " + a.describe());
  }
}

AntiNormValue antinorm_eval_detail(const AntiNormSpec& a, const AnyScale& s) {
  return std::visit([&](const auto& v) { return antinorm_eval_detail(a, v); }, s);
}

double antinorm_eval(const AntiNormSpec& a, const SpectralScale& s) {
  return antinorm_eval_detail(a, s).value;
}
double antinorm_eval(const AntiNormSpec& a, const HermitianMatrix& m) {
  return antinorm_eval_detail(a, m).value;
}
double antinorm_eval(const AntiNormSpec& a, const AnyScale& s) {
  return antinorm_eval_detail(a, s).value;
}

LimitCheckReport derived_limit_check(const SymmetricGauge& g, double p,
                                     const HermitianMatrix& a,
                                     const std::vector<double>& eps_grid,
                                     double tol) {
  if (eps_grid.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least two grid points");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1]) || !(eps_grid[i] > 0))
      fail(ErrorCode::InvalidArgument, "eps grid must be strictly decreasing and > 0");

  LimitCheckReport rep;
  rep.target = antinorm_eval(AntiNormSpec::derived(g, p), a);
  const Matrix id = Matrix::identity(a.n());
  for (double eps : eps_grid) {
    const HermitianMatrix shifted(a.mat() + eps * id);
    const HermitianMatrix neg = matrix_function(
        shifted, [p](double v) { return std::pow(v, -p); }, "t^-p");
    rep.values.push_back(std::pow(norm_eval(g, neg.mat()), -1.0 / p));
  }
  const double scale = std::max(1.0, std::abs(rep.target));
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.values.size(); ++i)
    if (rep.values[i] > rep.values[i - 1] + 1e-10 * scale) rep.monotone = false;
  rep.converged = std::abs(rep.values.back() - rep.target) <= tol * scale;
  if (!rep.monotone)
    fail(ErrorCode::Internal,
         "limit sequence is not monotone: numerical fault in the eigensolve");
  return rep;
}

LimitCheckReport delta_limit_check(double t, const AnyScale& a,
                                   const std::vector<double>& p_grid, double tol) {
  if (!(t > 0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "t must lie in (0,1]");
  if (p_grid.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least two grid points");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (!(p_grid[i] < p_grid[i - 1]) || !(p_grid[i] > 0))
      fail(ErrorCode::InvalidArgument, "p grid must be strictly decreasing and > 0");

  LimitCheckReport rep;
  bool any_finite = false;
  for (double p : p_grid) {
    const IntegralResult r = scale_integral(a, 1.0 - t, 1.0, IntegralMode::NegPower, p);
    if (!r.finite()) {
      rep.values.push_back(0.0);
      continue;
    }
    any_finite = true;
    rep.values.push_back(std::pow(r.value / t, -1.0 / p));
  }
  if (!any_finite) {
    // Negative-power integrals diverge at every grid p: the limit formula's
    // hypothesis fails for this scale.
    rep.hypothesis_violated = true;
    return rep;
  }

  const IntegralResult lg = scale_integral(a, 1.0 - t, 1.0, IntegralMode::Log);
  rep.target = lg.kind == IntegralResult::Kind::Finite ? std::exp(lg.value / t) : 0.0;
  const double scale = std::max(1.0, std::abs(rep.target));
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.values.size(); ++i)
    if (rep.values[i] < rep.values[i - 1] - 1e-10 * scale) rep.monotone = false;
  rep.converged = std::abs(rep.values.back() - rep.target) <= tol * scale;
  return rep;
}

BoundCheck sandwich_check(const SymmetricGauge& g, const Matrix& x) {
  const SpectralScale mu = s_numbers(x);
  const double norm1 = mu.total_integral();
  const double norminf = mu.max_value();
  const double unit = norm_eval(g, SpectralScale::constant(1.0));
  const double v = norm_eval(g, mu);
  BoundCheck b;
  b.lower_margin = v - norm1 * unit;
  b.upper_margin = norminf * unit - v;
  b.scale = std::max({1.0, std::abs(v), norminf * unit});
  return b;
}

BoundCheck sandwich_check(const AntiNormSpec& a, const HermitianMatrix& m) {
  const std::vector<double> eigs = eigenvalues_desc(m);
  const double lambda_min = std::max(0.0, eigs.back());
  const double tau = m.mat().trace_normalized();
  const double unit = antinorm_eval(a, HermitianMatrix(Matrix::identity(m.n())));
  const double v = antinorm_eval(a, m);
  BoundCheck b;
  b.lower_margin = v - lambda_min * unit;
  b.upper_margin = tau * unit - v;
  b.scale = std::max({1.0, std::abs(v), tau * unit});
  return b;
}

double cauchy_schwarz_margin(const SymmetricGauge& g, const Matrix& x,
                             const Matrix& y) {
  if (x.n() != y.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  const double lhs = norm_eval(g, x.adjoint() * y);
  const double rx = norm_eval(g, x.adjoint() * x);
  const double ry = norm_eval(g, y.adjoint() * y);
  return std::sqrt(rx) * std::sqrt(ry) - lhs;
}

}  // namespace antinorm
