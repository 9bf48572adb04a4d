#include "antinorm/scalar_function.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>

#include "antinorm/util.hpp"

namespace antinorm {

std::vector<double> default_grid(const ScalarFunction& f, int points) {
  const double lo = 1e-6;
  const double hi = std::min(1e3, f.t_max);
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(points) + 1);
  g.push_back(0.0);
  const double r = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) g.push_back(lo * std::exp(r * i));
  return g;
}

namespace {

struct GridData {
  std::vector<double> t;
  std::vector<double> v;
};

GridData evaluate_on(const ScalarFunction& f, const std::vector<double>& grid) {
  GridData d;
  d.t = grid;
  std::sort(d.t.begin(), d.t.end());
  d.t.erase(std::unique(d.t.begin(), d.t.end()), d.t.end());
  d.v.resize(d.t.size());
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    d.v[i] = f(d.t[i]);
    if (!std::isfinite(d.v[i]))
      fail(ErrorCode::Domain,
           "evaluator is non-finite at t = " + std::to_string(d.t[i]));
  }
  return d;
}

PropertyCheck chord_test(const GridData& d, double tol, bool convex) {
  PropertyCheck c{convex ? FnProperty::Convex : FnProperty::Concave, true, 0, 0, ""};
  for (std::size_t i = 0; i + 2 < d.t.size(); ++i) {
    const double x = d.t[i], y = d.t[i + 1], z = d.t[i + 2];
    const double chord = ((z - y) * d.v[i] + (y - x) * d.v[i + 2]) / (z - x);
    const double scale = std::max({1.0, std::abs(chord), std::abs(d.v[i + 1])});
    const double slack = convex ? chord - d.v[i + 1] : d.v[i + 1] - chord;
    if (slack < -tol * scale) {
      c.confirmed = false;
      c.witness_a = x;
      c.witness_b = z;
      c.detail = "chord violated at t = " + std::to_string(y);
      return c;
    }
  }
  return c;
}

}  // namespace

std::vector<PropertyCheck> verify_properties(const ScalarFunction& f,
                                             const std::vector<double>& grid,
                                             double tol, std::uint64_t seed) {
  const GridData d = evaluate_on(f, grid);
  std::vector<PropertyCheck> out;

  out.push_back(chord_test(d, tol, true));
  out.push_back(chord_test(d, tol, false));

  // Superadditivity on sampled pairs.
  {
    PropertyCheck c{FnProperty::Superadditive, true, 0, 0, ""};
    Rng rng(mix_seed(seed, 0x5add));
    const double top = d.t.back();
    for (int k = 0; k < 10000 && c.confirmed; ++k) {
      const double a = rng.uniform(0.0, top / 2);
      const double b = rng.uniform(0.0, top / 2);
      const double fab = f(a + b), fa = f(a), fb = f(b);
      const double scale = std::max({1.0, std::abs(fab), std::abs(fa + fb)});
      if (fab - fa - fb < -tol * scale) {
        c.confirmed = false;
        c.witness_a = a;
        c.witness_b = b;
        c.detail = "f(a+b) < f(a) + f(b)";
      }
    }
    out.push_back(c);
  }

  // Log-concavity: midpoint test f((a+b)/2)^2 >= f(a) f(b) on sampled pairs
  // plus chord checks of log f on the grid where f > 0.
  {
    PropertyCheck c{FnProperty::LogConcave, true, 0, 0, ""};
    Rng rng(mix_seed(seed, 0x10c0));
    const double top = d.t.back();
    for (int k = 0; k < 10000 && c.confirmed; ++k) {
      const double a = rng.uniform(0.0, top);
      const double b = rng.uniform(0.0, top);
      const double fm = f(0.5 * (a + b));
      const double prod = f(a) * f(b);
      const double scale = std::max({1.0, fm * fm, std::abs(prod)});
      if (fm * fm - prod < -tol * scale) {
        c.confirmed = false;
        c.witness_a = a;
        c.witness_b = b;
        c.detail = "midpoint log-concavity violated";
      }
    }
    for (std::size_t i = 0; i + 2 < d.t.size() && c.confirmed; ++i) {
      if (d.v[i] <= 0 || d.v[i + 1] <= 0 || d.v[i + 2] <= 0) continue;
      const double x = d.t[i], y = d.t[i + 1], z = d.t[i + 2];
      const double chord =
          ((z - y) * std::log(d.v[i]) + (y - x) * std::log(d.v[i + 2])) / (z - x);
      if (std::log(d.v[i + 1]) - chord < -tol * std::max(1.0, std::abs(chord))) {
        c.confirmed = false;
        c.witness_a = x;
        c.witness_b = z;
        c.detail = "log chord violated at t = " + std::to_string(y);
      }
    }
    out.push_back(c);
  }

  {
    PropertyCheck c{FnProperty::NonDecreasing, true, 0, 0, ""};
    for (std::size_t i = 0; i + 1 < d.t.size(); ++i) {
      const double scale = std::max({1.0, std::abs(d.v[i]), std::abs(d.v[i + 1])});
      if (d.v[i + 1] - d.v[i] < -tol * scale) {
        c.confirmed = false;
        c.witness_a = d.t[i];
        c.witness_b = d.t[i + 1];
        c.detail = "decreasing step";
        break;
      }
    }
    out.push_back(c);
  }

  {
    PropertyCheck c{FnProperty::ZeroAtZero, true, 0, 0, ""};
    const double v0 = f(0.0);
    if (std::abs(v0) > tol) {
      c.confirmed = false;
      c.detail = "f(0) = " + std::to_string(v0);
    }
    out.push_back(c);
  }

  return out;
}

void require_declared_properties(const ScalarFunction& f) {
  const auto checks = verify_properties(f, default_grid(f));
  for (const auto& c : checks) {
    if (f.has(c.property) && !c.confirmed)
      fail(ErrorCode::Precondition,
           "declared property refuted for '" + f.description + "': " + c.detail);
  }
}

ScalarFunction with_verified_properties(ScalarFunction f, unsigned required) {
  const auto checks = verify_properties(f, default_grid(f));
  for (const auto& c : checks) {
    if ((required & fn_flag(c.property)) == 0) continue;
    if (!c.confirmed)
      fail(ErrorCode::Precondition, "required property refuted for '" +
                                        f.description + "': " + c.detail);
  }
  f.flags |= required;
  return f;
}

ScalarFunction compose_class_s(const ScalarFunction& f, const ScalarFunction& g) {
  if (!f.has(FnProperty::Superadditive) || !f.has(FnProperty::LogConcave))
    fail(ErrorCode::Precondition,
         "outer function must be flagged superadditive and log-concave");
  if (!g.has(FnProperty::Superadditive) || !g.has(FnProperty::Convex) ||
      !g.has(FnProperty::ZeroAtZero))
    fail(ErrorCode::Precondition,
         "inner function must be flagged superadditive, convex and zero at zero");

  ScalarFunction psi;
  const auto fe = f.eval;
  const auto ge = g.eval;
  psi.eval = [fe, ge](double t) { return fe(ge(t)); };
  psi.flags = fn_flag(FnProperty::Superadditive) | fn_flag(FnProperty::NonDecreasing) |
              fn_flag(FnProperty::ZeroAtZero);
  psi.description = f.description + " o " + g.description;
  psi.class_s = true;

  // Restrict the domain so the inner range stays inside f's.
  double tmax = g.t_max;
  if (std::isfinite(f.t_max)) {
    double lo = 0, hi = g.t_max;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ge(mid) <= f.t_max ? lo : hi) = mid;
    }
    tmax = lo;
  }
  psi.t_max = tmax;
  return psi;
}

ScalarFunction inverse_power_sum_function(int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  ScalarFunction g;
  g.eval = [m](double t) {
    if (t <= 0) return 0.0;
    double denom = 1.0;  // 1 + t + ... + t^{m-1}, Horner
    for (int k = 1; k < m; ++k) denom = denom * t + 1.0;
    return std::pow(t, m) / denom;
  };
  g.flags = fn_flag(FnProperty::Convex) | fn_flag(FnProperty::Superadditive) |
            fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero);
  g.description = "t^" + std::to_string(m) + "/(1+t+...+t^" + std::to_string(m - 1) + ")";
  return g;
}

namespace {

constexpr unsigned kAllNice = fn_flag(FnProperty::Convex) |
                              fn_flag(FnProperty::Superadditive) |
                              fn_flag(FnProperty::LogConcave) |
                              fn_flag(FnProperty::NonDecreasing) |
                              fn_flag(FnProperty::ZeroAtZero);

}  // namespace

ScalarFunction fn_identity() {
  return {[](double t) { return t; },
          kAllNice | fn_flag(FnProperty::Concave), "t", 1e3, true};
}

ScalarFunction fn_power(double p) {
  if (p < 1) fail(ErrorCode::InvalidArgument, "power must be >= 1");
  return {[p](double t) { return std::pow(std::max(t, 0.0), p); }, kAllNice,
          "t^" + std::to_string(p), 1e3, true};
}

ScalarFunction fn_angle(double alpha) {
  if (alpha <= 0) fail(ErrorCode::InvalidArgument, "angle offset must be > 0");
  return {[alpha](double t) { return std::max(t - alpha, 0.0); }, kAllNice,
          "(t-" + std::to_string(alpha) + ")_+", 1e3, true};
}

ScalarFunction fn_t_arctan() {
  return {[](double t) { return t * std::atan(t); }, kAllNice, "t*arctan(t)", 1e3,
          true};
}

ScalarFunction fn_sinh_pow(double gamma) {
  if (gamma <= 1) fail(ErrorCode::InvalidArgument, "exponent must be > 1");
  return {[gamma](double t) { return std::sinh(std::pow(std::max(t, 0.0), gamma)); },
          fn_flag(FnProperty::Convex) | fn_flag(FnProperty::Superadditive) |
              fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero),
          "sinh(t^" + std::to_string(gamma) + ")", std::pow(690.0, 1.0 / gamma), true};
}

ScalarFunction fn_t_exp_pow(double gamma) {
  if (gamma <= 1) fail(ErrorCode::InvalidArgument, "exponent must be > 1");
  return {[gamma](double t) { return t * std::exp(std::pow(std::max(t, 0.0), gamma)); },
          fn_flag(FnProperty::Convex) | fn_flag(FnProperty::Superadditive) |
              fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero),
          "t*exp(t^" + std::to_string(gamma) + ")", std::pow(690.0, 1.0 / gamma), true};
}

ScalarFunction fn_min_pow(double a, double b) {
  if (!(1.0 <= a && a < b))
    fail(ErrorCode::InvalidArgument, "exponents must satisfy 1 <= a < b");
  return {[a, b](double t) {
            const double u = std::max(t, 0.0);
            return std::min(std::pow(u, a), std::pow(u, b));
          },
          fn_flag(FnProperty::Superadditive) | fn_flag(FnProperty::LogConcave) |
              fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero),
          "min(t^" + std::to_string(a) + ",t^" + std::to_string(b) + ")", 1e3, true};
}

ScalarFunction fn_pow_exp_inv(double a, double b) {
  if (a < 1 || b <= 0) fail(ErrorCode::InvalidArgument, "need a >= 1 and b > 0");
  unsigned flags = fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero);
  // Log-concave / superadditive only past the stated exponent threshold.
  if (b > 2 * a - 1 + 2 * std::sqrt(a * (a - 1)))
    flags |= fn_flag(FnProperty::Superadditive) | fn_flag(FnProperty::LogConcave);
  return {[a, b](double t) {
            return t <= 0 ? 0.0 : std::pow(t, a) * std::exp(-std::pow(t, -b));
          },
          flags, "t^" + std::to_string(a) + "*exp(-1/t^" + std::to_string(b) + ")",
          1e3, false};
}

ScalarFunction fn_step_angle(double a, double b) {
  if (!(0 < a && a < b)) fail(ErrorCode::InvalidArgument, "need 0 < a < b");
  return {[a, b](double t) { return t >= b ? t - a : 0.0; },
          fn_flag(FnProperty::Superadditive) | fn_flag(FnProperty::LogConcave) |
              fn_flag(FnProperty::NonDecreasing) | fn_flag(FnProperty::ZeroAtZero),
          "(t-" + std::to_string(a) + ")*ind(t>=" + std::to_string(b) + ")", 1e3, true};
}

ScalarFunction fn_sqrt() {
  return {[](double t) { return std::sqrt(std::max(t, 0.0)); },
          fn_flag(FnProperty::Concave) | fn_flag(FnProperty::NonDecreasing) |
              fn_flag(FnProperty::ZeroAtZero) | fn_flag(FnProperty::LogConcave),
          "sqrt(t)", 1e3, false};
}

// ---------------------------------------------------------------------------
// Expression parser: t, numbers, + - * / ^, min, max, exp, log, sinh, arctan,
// sqrt, indicator(x, b).

namespace {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Call1, Call2 } op;
  double value = 0;
  int fn = 0;
  ExprPtr a, b;
};

enum Fn1 { F_EXP, F_LOG, F_SINH, F_ARCTAN, F_SQRT };
enum Fn2 { F_MIN, F_MAX, F_INDICATOR };

double eval_expr(const Expr& e, double t) {
  switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Var: return t;
    case Expr::Op::Add: return eval_expr(*e.a, t) + eval_expr(*e.b, t);
    case Expr::Op::Sub: return eval_expr(*e.a, t) - eval_expr(*e.b, t);
    case Expr::Op::Mul: return eval_expr(*e.a, t) * eval_expr(*e.b, t);
    case Expr::Op::Div: return eval_expr(*e.a, t) / eval_expr(*e.b, t);
    case Expr::Op::Pow: return std::pow(eval_expr(*e.a, t), eval_expr(*e.b, t));
    case Expr::Op::Neg: return -eval_expr(*e.a, t);
    case Expr::Op::Call1: {
      const double x = eval_expr(*e.a, t);
      switch (e.fn) {
        case F_EXP: return std::exp(x);
        case F_LOG: return std::log(x);
        case F_SINH: return std::sinh(x);
        case F_ARCTAN: return std::atan(x);
        case F_SQRT: return std::sqrt(x);
      }
      return 0;
    }
    case Expr::Op::Call2: {
      const double x = eval_expr(*e.a, t);
      const double y = eval_expr(*e.b, t);
      switch (e.fn) {
        case F_MIN: return std::min(x, y);
        case F_MAX: return std::max(x, y);
        case F_INDICATOR: return x >= y ? 1.0 : 0.0;
      }
      return 0;
    }
  }
  return 0;
}

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != s_.size())
      fail(ErrorCode::Parse, "unexpected input at position " + std::to_string(pos_) +
                                 ": '" + s_.substr(pos_) + "'");
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      if (eat('+')) {
        auto r = std::make_shared<Expr>();
        r->op = Expr::Op::Add;
        r->a = e;
        r->b = parse_product();
        e = r;
      } else if (eat('-')) {
        auto r = std::make_shared<Expr>();
        r->op = Expr::Op::Sub;
        r->a = e;
        r->b = parse_product();
        e = r;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_power();
    for (;;) {
      if (eat('*')) {
        auto r = std::make_shared<Expr>();
        r->op = Expr::Op::Mul;
        r->a = e;
        r->b = parse_power();
        e = r;
      } else if (eat('/')) {
        auto r = std::make_shared<Expr>();
        r->op = Expr::Op::Div;
        r->a = e;
        r->b = parse_power();
        e = r;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_unary();
    if (eat('^')) {
      auto r = std::make_shared<Expr>();
      r->op = Expr::Op::Pow;
      r->a = base;
      r->b = parse_power();  // right-associative
      return r;
    }
    return base;
  }

  ExprPtr parse_unary() {
    if (eat('-')) {
      auto r = std::make_shared<Expr>();
      r->op = Expr::Op::Neg;
      r->a = parse_unary();
      return r;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size())
      fail(ErrorCode::Parse, "unexpected end of expression at position " +
                                 std::to_string(pos_));
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!eat(')'))
        fail(ErrorCode::Parse, "missing ')' at position " + std::to_string(pos_));
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(ErrorCode::Parse, std::string("unexpected character '") + c +
                               "' at position " + std::to_string(pos_));
  }

  ExprPtr parse_number() {
    std::size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
            s_[end] == 'e' || s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
             (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    const std::string tok = s_.substr(pos_, end - pos_);
    try {
      auto r = std::make_shared<Expr>();
      r->op = Expr::Op::Const;
      r->value = std::stod(tok);
      pos_ = end;
      return r;
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad number '" + tok + "' at position " +
                                 std::to_string(pos_));
    }
  }

  ExprPtr parse_ident() {
    std::size_t end = pos_;
    while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
    const std::string name = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (name == "t") {
      auto r = std::make_shared<Expr>();
      r->op = Expr::Op::Var;
      return r;
    }
    static const struct {
      const char* name;
      int arity;
      int fn;
    } kFns[] = {{"exp", 1, F_EXP},       {"log", 1, F_LOG},
                {"sinh", 1, F_SINH},     {"arctan", 1, F_ARCTAN},
                {"atan", 1, F_ARCTAN},   {"sqrt", 1, F_SQRT},
                {"min", 2, F_MIN},       {"max", 2, F_MAX},
                {"indicator", 2, F_INDICATOR}};
    for (const auto& fd : kFns) {
      if (name != fd.name) continue;
      if (!eat('('))
        fail(ErrorCode::Parse, "expected '(' after '" + name + "' at position " +
                                   std::to_string(pos_));
      auto r = std::make_shared<Expr>();
      r->op = fd.arity == 1 ? Expr::Op::Call1 : Expr::Op::Call2;
      r->fn = fd.fn;
      r->a = parse_sum();
      if (fd.arity == 2) {
        if (!eat(','))
          fail(ErrorCode::Parse, "expected ',' in '" + name + "' at position " +
                                     std::to_string(pos_));
        r->b = parse_sum();
      }
      if (!eat(')'))
        fail(ErrorCode::Parse, "missing ')' after '" + name + "' at position " +
                                   std::to_string(pos_));
      return r;
    }
    fail(ErrorCode::Parse, "unknown identifier '" + name + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarFunction parse_scalar_function(const std::string& expr) {
  Parser parser(expr);
  ExprPtr ast = parser.parse();
  ScalarFunction f;
  f.eval = [ast](double t) { return eval_expr(*ast, t); };
  f.description = expr;
  return f;
}

}  // namespace antinorm
