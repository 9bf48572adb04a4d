#include "antinorm/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "antinorm/util.hpp"

namespace antinorm {

Relation relation_from_string(const std::string& s) {
  if (s == "sub_w") return Relation::SubMajorize;
  if (s == "maj") return Relation::Majorize;
  if (s == "super_w") return Relation::SuperMajorize;
  if (s == "super_wlog") return Relation::SuperLogMajorize;
  fail(ErrorCode::NotFound, "unknown relation '" + s + "'");
}

std::string relation_to_string(Relation r) {
  switch (r) {
    case Relation::SubMajorize: return "sub_w";
    case Relation::Majorize: return "maj";
    case Relation::SuperMajorize: return "super_w";
    case Relation::SuperLogMajorize: return "super_wlog";
  }
  return "?";
}

namespace {

/// Union of interior breakpoints, deduplicated within 1e-12, plus the
/// endpoint the checked inequality does not trivially vanish at: t = 1 for
/// head integrals, t -> 0 for tails.
std::vector<double> check_points(const SpectralScale& a, const SpectralScale& b,
                                 bool heads) {
  std::vector<double> ts;
  for (double t : a.interior_breakpoints()) ts.push_back(t);
  for (double t : b.interior_breakpoints()) ts.push_back(t);
  ts.push_back(heads ? 1.0 : 0.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
           ts.end());
  return ts;
}

}  // namespace

RelationReport relation_check(const SpectralScale& a, const SpectralScale& b,
                              Relation relation) {
  RelationReport rep;
  rep.relation = relation;

  const bool heads =
      relation == Relation::SubMajorize || relation == Relation::Majorize;
  const std::vector<double> ts = check_points(a, b, heads);

  double margin = std::numeric_limits<double>::infinity();
  double worst = ts.front();
  for (double t : ts) {
    double slack = 0;
    switch (relation) {
      case Relation::SubMajorize:
      case Relation::Majorize:
        slack = b.head_integral(t) - a.head_integral(t);
        break;
      case Relation::SuperMajorize:
        slack = a.tail_integral(t) - b.tail_integral(t);
        break;
      case Relation::SuperLogMajorize: {
        const double la = a.tail_log_integral(t);
        const double lb = b.tail_log_integral(t);
        const bool ia = std::isinf(la), ib = std::isinf(lb);
        if (ia && ib)
          slack = 0.0;  // -inf >= -inf holds with zero slack
        else if (ia)
          slack = -std::numeric_limits<double>::infinity();
        else if (ib)
          slack = std::numeric_limits<double>::infinity();
        else
          slack = la - lb;
        break;
      }
    }
    if (slack < margin) {
      margin = slack;
      worst = t;
    }
  }

  rep.margin = margin;
  rep.worst_t = worst;
  rep.holds = margin >= -1e-12 * (1.0 + std::max(std::abs(a.max_value()),
                                                 std::abs(b.max_value())));
  if (relation == Relation::Majorize) {
    const double ta = a.total_integral(), tb = b.total_integral();
    if (std::abs(ta - tb) > 1e-10) rep.holds = false;
  }
  return rep;
}

WlogWitnessPair wlog_weaker_witness(std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x1709));

  const auto certify = [](const SpectralScale& a,
                          const SpectralScale& b) -> WlogWitnessPair {
    WlogWitnessPair w{a, b, relation_check(a, b, Relation::SuperLogMajorize),
                      relation_check(a, b, Relation::SuperMajorize), false};
    return w;
  };

  for (int trial = 0; trial < 512; ++trial) {
    const double wa = rng.uniform(0.2, 0.8);
    const double wb = rng.uniform(0.2, 0.8);
    const SpectralScale a = SpectralScale::from_steps(
        {{wa, rng.uniform(0.8, 3.0)}, {1.0 - wa, rng.uniform(0.2, 0.8)}});
    SpectralScale b;
    {
      const double hi = rng.uniform(0.8, 3.0);
      b = SpectralScale::from_steps({{wb, hi}, {1.0 - wb, rng.uniform(0.05, 0.8)}});
    }
    WlogWitnessPair w = certify(a, b);
    if (w.wlog.holds && !w.plain.holds && w.wlog.margin > 1e-9 &&
        w.plain.margin < -1e-9) {
      w.from_search = true;
      return w;
    }
  }

  // Constructive fallback: geometric tails in favour of the constant scale,
  // arithmetic tails against it.
  const SpectralScale a = SpectralScale::constant(1.1);
  const SpectralScale b = SpectralScale::from_steps({{0.5, 2.0}, {0.5, 0.5}});
  WlogWitnessPair w = certify(a, b);
  if (!w.wlog.holds || w.plain.holds)
    fail(ErrorCode::Internal, "fallback witness pair failed certification");
  return w;
}

}  // namespace antinorm
