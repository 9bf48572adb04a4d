#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "antinorm/majorization.hpp"
#include "antinorm/random_inputs.hpp"
#include "doctest.h"

using namespace antinorm;

namespace {

SpectralScale sum_of_scales(const HermitianMatrix& a, const HermitianMatrix& b) {
  return add(spectral_scale(a), spectral_scale(b));
}

}  // namespace

TEST_CASE("equal scales satisfy all four relations with zero margin") {
  const SpectralScale a = SpectralScale::from_steps({{0.5, 2.0}, {0.5, 1.0}});
  for (Relation r : {Relation::SubMajorize, Relation::Majorize,
                     Relation::SuperMajorize, Relation::SuperLogMajorize}) {
    const RelationReport rep = relation_check(a, a, r);
    CHECK(rep.holds);
    CHECK(std::abs(rep.margin) <= 1e-15);
  }
}

TEST_CASE("eigenvalues of a sum are majorized by the sum of eigenvalues") {
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(100 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 7;
    const HermitianMatrix a = random_psd(rng, n);
    const HermitianMatrix b = random_psd(rng, n);
    const SpectralScale lhs = spectral_scale(HermitianMatrix(a.mat() + b.mat()));
    const SpectralScale rhs = sum_of_scales(a, b);
    const RelationReport maj = relation_check(lhs, rhs, Relation::Majorize);
    CHECK(maj.holds);
    // trace equality plus ordered heads gives both one-sided relations
    CHECK(relation_check(lhs, rhs, Relation::SubMajorize).holds);
    CHECK(relation_check(lhs, rhs, Relation::SuperMajorize).holds);
  }
}

TEST_CASE("s-numbers of a sum are submajorized by the sum of s-numbers") {
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(200 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 7;
    const Matrix x = random_matrix(rng, n);
    const Matrix y = random_matrix(rng, n);
    const SpectralScale lhs = s_numbers(x + y);
    const SpectralScale rhs = add(s_numbers(x), s_numbers(y));
    CHECK(relation_check(lhs, rhs, Relation::SubMajorize).holds);
  }
}

TEST_CASE("hand-summed log-tail comparison") {
  const SpectralScale a = SpectralScale::from_steps({{0.5, 4.0}, {0.5, 1e-6}});
  const SpectralScale b = SpectralScale::constant(1.0);
  const RelationReport rep = relation_check(a, b, Relation::SuperLogMajorize);

  // breakpoints are t = 0 and t = 0.5; tail log integrals of b vanish
  const double slack0 = 0.5 * std::log(4.0) + 0.5 * std::log(1e-6);
  const double slack_half = 0.5 * std::log(1e-6);
  CHECK(!rep.holds);
  CHECK(rep.margin == doctest::Approx(std::min(slack0, slack_half)).epsilon(1e-12));
  CHECK(rep.worst_t == doctest::Approx(0.5));
}

TEST_CASE("negative-infinity conventions in log tails") {
  const SpectralScale with_zero = SpectralScale::from_steps({{0.5, 1.0}, {0.5, 0.0}});
  const SpectralScale positive = SpectralScale::constant(0.5);
  // -inf on the left against a finite right fails
  CHECK(!relation_check(with_zero, positive, Relation::SuperLogMajorize).holds);
  // -inf against -inf holds (slack 0 at those breakpoints)
  CHECK(relation_check(with_zero, with_zero, Relation::SuperLogMajorize).holds);
  // finite left against -inf right is infinitely slack
  const RelationReport rep =
      relation_check(positive, with_zero, Relation::SuperLogMajorize);
  CHECK(rep.holds);
}

TEST_CASE("breakpoint slacks bound every interior point") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const SpectralScale a = SpectralScale::from_steps(
        {{0.3, rng.uniform(1.0, 3.0)}, {0.7, rng.uniform(0.1, 1.0)}});
    const SpectralScale b = SpectralScale::from_steps(
        {{0.6, rng.uniform(1.0, 3.0)}, {0.4, rng.uniform(0.1, 1.0)}});
    const RelationReport sub = relation_check(a, b, Relation::SubMajorize);
    const RelationReport sup = relation_check(a, b, Relation::SuperMajorize);
    // slacks vanish at the head/tail anchors, so interior points are bounded
    // by the breakpoint minimum capped at zero
    for (int k = 0; k < 100; ++k) {
      const double t = rng.uniform(1e-9, 1.0);
      CHECK(b.head_integral(t) - a.head_integral(t) >=
            std::min(sub.margin, 0.0) - 1e-12);
      CHECK(a.tail_integral(t) - b.tail_integral(t) >=
            std::min(sup.margin, 0.0) - 1e-12);
    }
  }
}

TEST_CASE("trace equality is part of majorization") {
  const SpectralScale a = SpectralScale::constant(1.0);
  const SpectralScale b = SpectralScale::constant(2.0);
  CHECK(relation_check(a, b, Relation::SubMajorize).holds);
  CHECK(!relation_check(a, b, Relation::Majorize).holds);
}

TEST_CASE("log-tail order is weaker than plain tail order") {
  for (std::uint64_t seed : {1ull, 7ull, 99ull, 1234ull}) {
    const WlogWitnessPair w = wlog_weaker_witness(seed);
    CHECK(w.wlog.holds);
    CHECK(!w.plain.holds);

    // re-certified from scratch
    CHECK(relation_check(w.a, w.b, Relation::SuperLogMajorize).holds);
    CHECK(!relation_check(w.a, w.b, Relation::SuperMajorize).holds);

    // swapping the pair breaks the strict log-tail gap
    CHECK(!relation_check(w.b, w.a, Relation::SuperLogMajorize).holds);

    // scaling both sides preserves both verdicts
    for (double c : {0.5, 2.0, 7.5}) {
      CHECK(relation_check(scaled(w.a, c), scaled(w.b, c), Relation::SuperLogMajorize)
                .holds);
      CHECK(!relation_check(scaled(w.a, c), scaled(w.b, c), Relation::SuperMajorize)
                 .holds);
    }
  }
}

TEST_CASE("relation names round-trip") {
  for (Relation r : {Relation::SubMajorize, Relation::Majorize,
                     Relation::SuperMajorize, Relation::SuperLogMajorize})
    CHECK(relation_from_string(relation_to_string(r)) == r);
  CHECK_THROWS_AS(relation_from_string("majorly"), Error);
}
