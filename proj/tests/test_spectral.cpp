#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "antinorm/random_inputs.hpp"
#include "antinorm/spectral_scale.hpp"
#include "doctest.h"

using namespace antinorm;

namespace {

/// Counting oracle straight from the definition: the least s with
/// #(eigenvalues > s)/n <= t.
double lambda_by_counting(const std::vector<double>& eigs, double t) {
  const int n = static_cast<int>(eigs.size());
  std::vector<double> sorted = eigs;
  std::sort(sorted.rbegin(), sorted.rend());
  // candidates: the eigenvalues themselves
  for (int k = n - 1; k >= 0; --k) {
    const double s = sorted[static_cast<std::size_t>(k)];
    int over = 0;
    for (double v : sorted)
      if (v > s) ++over;
    if (static_cast<double>(over) / n <= t) return s;
  }
  return sorted.front();
}

}  // namespace

TEST_CASE("spectral scale of matrices") {
  const SpectralScale s =
      spectral_scale(HermitianMatrix(Matrix::diagonal(std::vector<double>{3.0, 1.0})));
  REQUIRE(s.steps().size() == 2);
  CHECK(s.steps()[0].width == doctest::Approx(0.5));
  CHECK(s.steps()[0].value == doctest::Approx(3.0));
  CHECK(s.steps()[1].value == doctest::Approx(1.0));

  const SpectralScale ident = spectral_scale(HermitianMatrix(Matrix::identity(4)));
  REQUIRE(ident.steps().size() == 1);  // constant scale merged
  CHECK(ident.steps()[0].width == doctest::Approx(1.0));
  CHECK(ident.steps()[0].value == doctest::Approx(1.0));
}

TEST_CASE("spectral scale agrees with the counting oracle") {
  for (int trial = 0; trial < 30; ++trial) {
    Rng rng(500 + static_cast<std::uint64_t>(trial));
    const HermitianMatrix a = random_hermitian(rng, 5);
    const std::vector<double> eigs = eigenvalues_desc(a);
    const SpectralScale s = spectral_scale(a);
    for (int k = 0; k < 37; ++k) {
      const double t = (k + 0.5) / 37.0;
      CHECK(s.value_at(t) ==
            doctest::Approx(lambda_by_counting(eigs, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("s-numbers") {
  const SpectralScale u = s_numbers(haar_unitary(4, 2).mat());
  for (const auto& st : u.steps())
    CHECK(st.value == doctest::Approx(1.0).epsilon(1e-10));

  const SpectralScale d = s_numbers(Matrix::diagonal(std::vector<double>{-2.0, 1.0}));
  REQUIRE(d.steps().size() == 2);
  CHECK(d.steps()[0].value == doctest::Approx(2.0));
  CHECK(d.steps()[1].value == doctest::Approx(1.0));
}

TEST_CASE("s-numbers match singular values and are adjoint-invariant") {
  for (int trial = 0; trial < 60; ++trial) {
    Rng rng(600 + static_cast<std::uint64_t>(trial));
    const Matrix x = random_matrix(rng, 2 + trial % 5);
    const SpectralScale mu = s_numbers(x);
    const SpectralScale mu_star = s_numbers(x.adjoint());
    const std::vector<double> sv = singular_values(x);
    std::size_t idx = 0;
    for (const auto& st : mu.steps()) {
      const int reps = static_cast<int>(std::round(st.width * x.n()));
      for (int r = 0; r < reps; ++r, ++idx)
        CHECK(st.value == doctest::Approx(sv[idx]).epsilon(1e-9));
    }
    // mu(X) = mu(X*)
    REQUIRE(mu.steps().size() == mu_star.steps().size());
    for (std::size_t i = 0; i < mu.steps().size(); ++i)
      CHECK(mu.steps()[i].value ==
            doctest::Approx(mu_star.steps()[i].value).epsilon(1e-8));
  }
}

TEST_CASE("truncation") {
  const SpectralScale a = SpectralScale::from_steps({{0.5, 3.0}, {0.5, 1.0}});
  const SpectralScale t2 = truncate(a, 2.0);
  CHECK(t2.steps()[0].value == doctest::Approx(2.0));
  CHECK(t2.steps()[1].value == doctest::Approx(1.0));
  const SpectralScale same = truncate(a, 5.0);
  CHECK(same.steps()[0].value == doctest::Approx(3.0));

  // pointwise below the original, monotone in s, integral increasing to full
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralScale sc = SpectralScale::from_steps(
        {{0.3, rng.uniform(2.0, 4.0)}, {0.3, rng.uniform(1.0, 2.0)}, {0.4, rng.uniform(0.0, 1.0)}});
    double prev_total = -1;
    for (double cut : {0.5, 1.0, 2.0, 3.5, 10.0}) {
      const SpectralScale tr = truncate(sc, cut);
      for (double t : {0.1, 0.4, 0.8})
        CHECK(tr.value_at(t) <= sc.value_at(t) + 1e-15);
      const double total = tr.total_integral();
      CHECK(total >= prev_total - 1e-15);
      prev_total = total;
    }
    CHECK(truncate(sc, 100.0).total_integral() ==
          doctest::Approx(sc.total_integral()));
  }
}

TEST_CASE("step integrals in closed form") {
  const SpectralScale a = SpectralScale::from_steps({{0.5, 3.0}, {0.5, 1.0}});
  const IntegralResult plain = scale_integral(a, 0.0, 0.75, IntegralMode::Plain);
  CHECK(plain.finite());
  CHECK(plain.value == doctest::Approx(1.75).epsilon(1e-15));

  const SpectralScale z = SpectralScale::from_steps({{0.5, 1.0}, {0.5, 0.0}});
  CHECK(scale_integral(z, 0.0, 1.0, IntegralMode::Log).kind ==
        IntegralResult::Kind::NegInfinite);
  CHECK(scale_integral(z, 0.0, 1.0, IntegralMode::NegPower, 0.5).kind ==
        IntegralResult::Kind::Divergent);
  CHECK(scale_integral(z, 0.0, 0.5, IntegralMode::Log).finite());

  CHECK_THROWS_AS(scale_integral(a, 0.5, 0.5, IntegralMode::Plain), Error);
  const SpectralScale neg = SpectralScale::from_steps({{1.0, -1.0}});
  CHECK_THROWS_AS(scale_integral(neg, 0.0, 1.0, IntegralMode::Log), Error);
}

TEST_CASE("boundary analytic scale: log integrable, negative powers divergent") {
  const AnalyticScale b = named_analytic_scale("exp_inv_sqrt");
  const IntegralResult lg = scale_integral(b, 0.0, 1.0, IntegralMode::Log);
  REQUIRE(lg.finite());
  // closed form: the antiderivative of -(1-s)^(-1/2) integrates to -2
  CHECK(std::abs(lg.value - (-2.0)) <= 1e-3);
  CHECK(std::abs(lg.value - (-2.0)) <= 1e-6);  // the panels do much better

  for (double p : {0.01, 0.1, 1.0})
    CHECK(scale_integral(b, 0.0, 1.0, IntegralMode::NegPower, p).kind ==
          IntegralResult::Kind::Divergent);
}

TEST_CASE("analytic quadrature against closed forms") {
  const AnalyticScale e = named_analytic_scale("exp_neg_s");
  const IntegralResult plain = scale_integral(e, 0.0, 1.0, IntegralMode::Plain);
  CHECK(plain.value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  const IntegralResult lg = scale_integral(e, 0.0, 1.0, IntegralMode::Log);
  CHECK(lg.value == doctest::Approx(-0.5).epsilon(1e-10));
  const IntegralResult np = scale_integral(e, 0.0, 1.0, IntegralMode::NegPower, 1.0);
  CHECK(np.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));

  // log integral diverging to -inf is certified, not computed
  const AnalyticScale hard(
      [](double s) { return s >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - s)); },
      "exp(-1/(1-s))");
  CHECK(scale_integral(hard, 0.0, 1.0, IntegralMode::Log).kind ==
        IntegralResult::Kind::NegInfinite);
}

TEST_CASE("apply_function") {
  const SpectralScale a = SpectralScale::from_steps({{0.5, 3.0}, {0.5, 1.0}});
  const SpectralScale sq = apply_function(a, [](double v) { return v * v; }, true);
  CHECK(sq.steps()[0].value == doctest::Approx(9.0));
  CHECK(sq.steps()[1].value == doctest::Approx(1.0));

  const SpectralScale c = apply_function(a, [](double) { return 2.5; }, true);
  REQUIRE(c.steps().size() == 1);
  CHECK(c.steps()[0].width == doctest::Approx(1.0));

  // non-monotone map re-sorts, matching the matrix route
  const SpectralScale base = SpectralScale::from_steps({{0.5, 3.0}, {0.5, 0.0}});
  const auto f = [](double v) { return (v - 2.0) * (v - 2.0); };
  const SpectralScale mapped = apply_function(base, f, false);
  CHECK(mapped.steps()[0].value == doctest::Approx(4.0));
  CHECK(mapped.steps()[1].value == doctest::Approx(1.0));
  const SpectralScale via_matrix = spectral_scale(
      matrix_function(HermitianMatrix(Matrix::diagonal(std::vector<double>{3.0, 0.0})), f));
  CHECK(via_matrix.steps()[0].value == doctest::Approx(4.0));
  CHECK(via_matrix.steps()[1].value == doctest::Approx(1.0));
}

TEST_CASE("scale route commutes with the matrix route for monotone maps") {
  const auto fs = {
      std::function<double(double)>([](double t) { return t * t; }),
      std::function<double(double)>([](double t) { return std::exp(t); }),
      std::function<double(double)>([](double t) { return std::max(t - 0.5, 0.0); })};
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(700 + static_cast<std::uint64_t>(trial));
    const HermitianMatrix a = random_psd(rng, 2 + trial % 7);
    for (const auto& f : fs) {
      const SpectralScale lhs = spectral_scale(matrix_function(a, f));
      const SpectralScale rhs = apply_function(spectral_scale(a), f, true);
      const double scale = 1.0 + std::abs(rhs.max_value());
      for (double t : {0.05, 0.3, 0.55, 0.8, 0.99})
        CHECK(std::abs(lhs.value_at(t) - rhs.value_at(t)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("plain integral over (0,1) is the normalized trace") {
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(800 + static_cast<std::uint64_t>(trial));
    const HermitianMatrix a = random_hermitian(rng, 2 + trial % 6);
    const SpectralScale s = spectral_scale(a);
    CHECK(std::abs(s.total_integral() - a.mat().trace_normalized()) <= 1e-10);
  }
}

TEST_CASE("scale validation") {
  CHECK_THROWS_AS(SpectralScale::from_steps({{0.5, 1.0}, {0.5, 2.0}}), Error);
  CHECK_THROWS_AS(SpectralScale::from_steps({{0.6, 1.0}, {0.6, 0.5}}), Error);
  CHECK_THROWS_AS(SpectralScale::from_steps({{-0.5, 1.0}, {1.5, 0.5}}), Error);
  CHECK_THROWS_AS(AnalyticScale([](double s) { return s; }, "increasing"), Error);
  CHECK_THROWS_AS(named_analytic_scale("nope"), Error);
}

TEST_CASE("pointwise scale addition") {
  const SpectralScale a = SpectralScale::from_steps({{0.25, 2.0}, {0.75, 1.0}});
  const SpectralScale b = SpectralScale::from_steps({{0.5, 3.0}, {0.5, 0.5}});
  const SpectralScale sum = add(a, b);
  for (double t : {0.1, 0.3, 0.6, 0.9})
    CHECK(sum.value_at(t) == doctest::Approx(a.value_at(t) + b.value_at(t)));
  CHECK(sum.total_integral() ==
        doctest::Approx(a.total_integral() + b.total_integral()).epsilon(1e-12));
}
