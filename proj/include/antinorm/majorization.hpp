#pragma once

#include <cstdint>
#include <string>

#include "antinorm/spectral_scale.hpp"

namespace antinorm {

enum class Relation {
  SubMajorize,      // head integrals of a <= those of b
  Majorize,         // SubMajorize + equal traces
  SuperMajorize,    // tail integrals of a >= those of b
  SuperLogMajorize  // tail log-integrals of a >= those of b
};

Relation relation_from_string(const std::string& s);
std::string relation_to_string(Relation r);

struct RelationReport {
  Relation relation;
  bool holds = false;
  double worst_t = 0.0;  // merged breakpoint with the smallest slack
  double margin = 0.0;   // min slack; >= 0 iff the relation holds
};

/// Checked at the union of breakpoints of a and b: partial integrals of step
/// functions are piecewise linear in t, so breakpoint slacks bound the whole
/// interval. -inf log-integrals: -inf on the left against a finite right fails
/// immediately; -inf >= -inf counts as holding with slack 0.
RelationReport relation_check(const SpectralScale& a, const SpectralScale& b,
                              Relation relation);

struct WlogWitnessPair {
  SpectralScale a;
  SpectralScale b;
  RelationReport wlog;   // holds
  RelationReport plain;  // fails
  bool from_search = false;
};

/// A certified pair with tail log-integrals ordered but plain tails not:
/// randomized two-step search with a fixed constructive fallback.
WlogWitnessPair wlog_weaker_witness(std::uint64_t seed);

}  // namespace antinorm
