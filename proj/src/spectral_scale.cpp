#include "antinorm/spectral_scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace antinorm {

namespace {

constexpr double kWidthTol = 1e-12;
constexpr double kPointBlowup = 1e12;   // single evaluation => divergence certificate
constexpr double kSumBlowup = 1e9;      // accumulated integral => divergence certificate

std::vector<SpectralScale::Step> merge_equal(std::vector<SpectralScale::Step> s) {
  std::vector<SpectralScale::Step> out;
  for (const auto& st : s) {
    if (!out.empty() && out.back().value == st.value)
      out.back().width += st.width;
    else
      out.push_back(st);
  }
  return out;
}

}  // namespace

SpectralScale SpectralScale::from_steps(std::vector<Step> steps) {
  if (steps.empty()) fail(ErrorCode::InvalidArgument, "scale must have at least one step");
  double total = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& st = steps[i];
    if (!(st.width > 0) || !std::isfinite(st.width))
      fail(ErrorCode::InvalidArgument, "scale step widths must be positive");
    if (!std::isfinite(st.value))
      fail(ErrorCode::InvalidArgument, "scale step values must be finite");
    if (i > 0 && st.value > steps[i - 1].value + kWidthTol * (1.0 + std::abs(st.value)))
      fail(ErrorCode::InvalidArgument, "scale values must be non-increasing");
    total += st.width;
  }
  if (std::abs(total - 1.0) > kWidthTol)
    fail(ErrorCode::InvalidArgument,
         "scale total width must be 1, got " + std::to_string(total));
  // Clamp out sub-tolerance increases left by floating arithmetic.
  for (std::size_t i = 1; i < steps.size(); ++i)
    steps[i].value = std::min(steps[i].value, steps[i - 1].value);
  SpectralScale s;
  s.steps_ = merge_equal(std::move(steps));
  return s;
}

SpectralScale SpectralScale::from_values_desc(const std::vector<double>& values) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "no values");
  const int n = static_cast<int>(values.size());
  std::vector<Step> steps;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && values[static_cast<std::size_t>(j) + 1] == values[static_cast<std::size_t>(i)]) ++j;
    steps.push_back({static_cast<double>(j - i + 1) / n, values[static_cast<std::size_t>(i)]});
    i = j + 1;
  }
  return from_steps(std::move(steps));
}

double SpectralScale::value_at(double t) const {
  if (t < 0) fail(ErrorCode::InvalidArgument, "t out of range");
  double c = 0;
  for (const Step& st : steps_) {
    c += st.width;
    if (t < c) return st.value;
  }
  return steps_.back().value;
}

std::vector<double> SpectralScale::interior_breakpoints() const {
  std::vector<double> bp;
  double c = 0;
  for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
    c += steps_[i].width;
    bp.push_back(c);
  }
  return bp;
}

double SpectralScale::head_integral(double t) const {
  double acc = 0, c = 0;
  for (const Step& st : steps_) {
    const double lo = c, hi = c + st.width;
    c = hi;
    const double ov = std::min(t, hi) - lo;
    if (ov > 0) acc += ov * st.value;
    if (hi >= t) break;
  }
  return acc;
}

double SpectralScale::tail_integral(double t) const {
  double acc = 0, c = 0;
  for (const Step& st : steps_) {
    const double lo = c, hi = c + st.width;
    c = hi;
    const double ov = hi - std::max(t, lo);
    if (ov > 0) acc += ov * st.value;
  }
  return acc;
}

double SpectralScale::tail_log_integral(double t) const {
  double acc = 0, c = 0;
  bool neg_inf = false;
  for (const Step& st : steps_) {
    const double lo = c, hi = c + st.width;
    c = hi;
    const double ov = hi - std::max(t, lo);
    if (ov <= 0) continue;
    if (st.value < 0)
      fail(ErrorCode::Domain, "log of a negative scale value");
    if (st.value == 0)
      neg_inf = true;
    else
      acc += ov * std::log(st.value);
  }
  return neg_inf ? -std::numeric_limits<double>::infinity() : acc;
}

AnalyticScale::AnalyticScale(std::function<double(double)> value, std::string description)
    : AnalyticScale(std::move(value), nullptr, std::move(description)) {}

AnalyticScale::AnalyticScale(std::function<double(double)> value,
                             std::function<double(double)> log_value,
                             std::string description)
    : value_(std::move(value)),
      log_value_(std::move(log_value)),
      description_(std::move(description)) {
  // Spot-check monotonicity on a coarse grid; endpoints are left to the
  // evaluator (they may be singular limits).
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 1000; ++k) {
    const double t = k / 1000.0;
    const double v = value_(t);
    if (std::isfinite(v) && std::isfinite(prev) && v > prev + 1e-9 * (1.0 + std::abs(v)))
      fail(ErrorCode::InvalidArgument,
           "analytic scale is not non-increasing near t = " + std::to_string(t));
    if (std::isfinite(v)) prev = v;
  }
}

double AnalyticScale::log_at(double t) const {
  if (log_value_) return log_value_(t);
  const double v = value_(t);
  if (v < 0) fail(ErrorCode::Domain, "log of a negative scale value");
  return v == 0 ? -std::numeric_limits<double>::infinity() : std::log(v);
}

IntegralResult scale_integral(const SpectralScale& a, double lo, double hi,
                              IntegralMode mode, double p) {
  if (!(0.0 <= lo && lo < hi && hi <= 1.0 + kWidthTol))
    fail(ErrorCode::InvalidArgument, "invalid integration interval");
  if (mode == IntegralMode::NegPower && !(p > 0))
    fail(ErrorCode::InvalidArgument, "negative-power mode needs p > 0");

  double acc = 0, c = 0;
  bool neg_inf = false;
  for (const auto& st : a.steps()) {
    const double slo = c, shi = c + st.width;
    c = shi;
    const double ov = std::min(hi, shi) - std::max(lo, slo);
    if (ov <= 0) continue;
    switch (mode) {
      case IntegralMode::Plain:
        acc += ov * st.value;
        break;
      case IntegralMode::Log:
        if (st.value < 0) fail(ErrorCode::Domain, "log of a negative scale value");
        if (st.value == 0)
          neg_inf = true;
        else
          acc += ov * std::log(st.value);
        break;
      case IntegralMode::NegPower:
        if (st.value < 0) fail(ErrorCode::Domain, "negative scale value under a negative power");
        if (st.value == 0) return IntegralResult::divergent();  // 0^-p = inf
        acc += ov * std::pow(st.value, -p);
        break;
    }
  }
  if (neg_inf) return IntegralResult::neg_infinite();
  return {IntegralResult::Kind::Finite, acc};
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

struct PanelResult {
  bool blown = false;
  double blow_sign = 0;
  double value = 0;
};

PanelResult integrate_panel(const std::function<double(double)>& g, double a, double b) {
  PanelResult r;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int k = 0; k < 8; ++k) {
    for (double sgn : {-1.0, 1.0}) {
      const double x = c + sgn * h * kGlNode[k];
      const double v = g(x);
      if (!std::isfinite(v) || std::abs(v) > kPointBlowup) {
        r.blown = true;
        r.blow_sign = (v < 0 || v == -std::numeric_limits<double>::infinity()) ? -1.0 : 1.0;
        return r;
      }
      r.value += kGlWeight[k] * h * v;
    }
  }
  return r;
}

}  // namespace

IntegralResult scale_integral(const AnalyticScale& a, double lo, double hi,
                              IntegralMode mode, double p) {
  if (!(0.0 <= lo && lo < hi && hi <= 1.0 + kWidthTol))
    fail(ErrorCode::InvalidArgument, "invalid integration interval");
  if (mode == IntegralMode::NegPower && !(p > 0))
    fail(ErrorCode::InvalidArgument, "negative-power mode needs p > 0");

  // Log and negative-power integrands run through the analytic log when the
  // scale provides one; exp-then-log round trips underflow long before the
  // divergence thresholds would trigger.
  const auto g = [&](double s) -> double {
    switch (mode) {
      case IntegralMode::Plain:
        return a(s);
      case IntegralMode::Log:
        return a.log_at(s);
      case IntegralMode::NegPower: {
        if (a.has_log()) return std::exp(-p * a.log_at(s));
        const double v = a(s);
        if (v < 0) fail(ErrorCode::Domain, "negative scale value under a negative power");
        return v == 0 ? std::numeric_limits<double>::infinity() : std::pow(v, -p);
      }
    }
    return 0;
  };

  // Dyadic panels shrinking toward each endpoint absorb integrable endpoint
  // singularities; a blown-up evaluation or runaway sum is the divergence
  // certificate.
  const double mid = 0.5 * (lo + hi);
  double acc = 0;
  for (int side = 0; side < 2; ++side) {
    double inner = mid;
    const double endpoint = side == 0 ? lo : hi;
    for (int level = 0; level < 64; ++level) {
      const double outer = endpoint + (inner - endpoint) * 0.5;
      // double spacing caps the descent; the residual mass of an integrable
      // singularity at that width is below rounding anyway
      if (outer == inner || outer == endpoint) break;
      const PanelResult pr = side == 0 ? integrate_panel(g, outer, inner)
                                       : integrate_panel(g, inner, outer);
      if (pr.blown)
        return pr.blow_sign < 0 ? IntegralResult::neg_infinite()
                                : IntegralResult::divergent();
      acc += pr.value;
      if (acc > kSumBlowup) return IntegralResult::divergent();
      if (acc < -kSumBlowup) return IntegralResult::neg_infinite();
      inner = outer;
      if (std::abs(pr.value) < 1e-16 * (1.0 + std::abs(acc)) && level > 4) break;
    }
  }
  return {IntegralResult::Kind::Finite, acc};
}

IntegralResult scale_integral(const AnyScale& a, double lo, double hi,
                              IntegralMode mode, double p) {
  return std::visit(
      [&](const auto& s) { return scale_integral(s, lo, hi, mode, p); }, a);
}

SpectralScale spectral_scale(const HermitianMatrix& a) {
  return SpectralScale::from_values_desc(eigenvalues_desc(a));
}

SpectralScale s_numbers(const Matrix& x) {
  return spectral_scale(polar(x).positive);
}

SpectralScale truncate(const SpectralScale& a, double s) {
  if (s < 0) fail(ErrorCode::InvalidArgument, "truncation level must be >= 0");
  std::vector<SpectralScale::Step> steps;
  for (const auto& st : a.steps()) steps.push_back({st.width, std::min(st.value, s)});
  return SpectralScale::from_steps(std::move(steps));
}

SpectralScale apply_function(const SpectralScale& a,
                             const std::function<double(double)>& f,
                             bool non_decreasing, const char* fname) {
  std::vector<SpectralScale::Step> steps;
  for (const auto& st : a.steps()) {
    const double v = f(st.value);
    if (!std::isfinite(v))
      fail(ErrorCode::Domain, std::string(fname) + " is undefined at scale value " +
                                  std::to_string(st.value));
    steps.push_back({st.width, v});
  }
  if (!non_decreasing)
    std::stable_sort(steps.begin(), steps.end(),
                     [](const auto& x, const auto& y) { return x.value > y.value; });
  return SpectralScale::from_steps(std::move(steps));
}

SpectralScale add(const SpectralScale& a, const SpectralScale& b) {
  std::vector<double> cuts{0.0};
  for (double t : a.interior_breakpoints()) cuts.push_back(t);
  for (double t : b.interior_breakpoints()) cuts.push_back(t);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  std::vector<SpectralScale::Step> steps;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    if (w <= kWidthTol) continue;
    const double t = 0.5 * (cuts[i] + cuts[i + 1]);
    steps.push_back({w, a.value_at(t) + b.value_at(t)});
  }
  // Rounding in the merged cuts can leave the total a hair off 1.
  double total = 0;
  for (const auto& st : steps) total += st.width;
  steps.back().width += 1.0 - total;
  return SpectralScale::from_steps(std::move(steps));
}

SpectralScale scaled(const SpectralScale& a, double c) {
  if (c < 0) fail(ErrorCode::InvalidArgument, "scale factor must be >= 0");
  std::vector<SpectralScale::Step> steps;
  for (const auto& st : a.steps()) steps.push_back({st.width, c * st.value});
  return SpectralScale::from_steps(std::move(steps));
}

AnalyticScale named_analytic_scale(const std::string& id) {
  if (id == "exp_inv_sqrt")
    return AnalyticScale(
        [](double s) {
          const double u = 1.0 - s;
          return u <= 0 ? 0.0 : std::exp(-1.0 / std::sqrt(u));
        },
        [](double s) {
          const double u = 1.0 - s;
          return u <= 0 ? -std::numeric_limits<double>::infinity()
                        : -1.0 / std::sqrt(u);
        },
        "exp(-1/sqrt(1-s))");
  if (id == "exp_neg_s")
    return AnalyticScale([](double s) { return std::exp(-s); },
                         [](double s) { return -s; }, "exp(-s)");
  if (id == "one")
    return AnalyticScale([](double) { return 1.0; }, [](double) { return 0.0; }, "1");
  fail(ErrorCode::NotFound, "unknown analytic scale '" + id + "'");
}

std::vector<std::string> analytic_scale_names() {
  return {"exp_inv_sqrt", "exp_neg_s", "one"};
}

}  // namespace antinorm
