#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>
#include <complex>

#include "antinorm/linalg.hpp"
#include "antinorm/random_inputs.hpp"
#include "doctest.h"

using namespace antinorm;

namespace {

double reconstruction_error(const HermitianMatrix& a, const EigenDecomposition& e) {
  return (a.mat() - e.reconstruct()).max_abs();
}

/// Independent oracle: e_m as an explicit sum over all m-subsets.
double subset_sum_oracle(const std::vector<double>& v, int m) {
  const int n = static_cast<int>(v.size());
  double total = m == 0 ? 1.0 : 0.0;
  if (m == 0) return total;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    double prod = 1;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= v[static_cast<std::size_t>(i)];
    total += prod;
  }
  return total;
}

}  // namespace

TEST_CASE("eigh on diagonal inputs") {
  const HermitianMatrix a(Matrix::diagonal(std::vector<double>{1.0, 3.0}));
  const EigenDecomposition e = eigh(a);
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  // columns of a permutation of the identity
  for (int j = 0; j < 2; ++j) {
    int nonzero = 0;
    for (int i = 0; i < 2; ++i)
      if (std::abs(e.vectors(i, j)) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
  }

  const HermitianMatrix id(Matrix::identity(5));
  const EigenDecomposition ei = eigh(id);
  for (double v : ei.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(reconstruction_error(id, ei) <= 1e-10);
}

TEST_CASE("eigh reconstruction, orthonormality and order up to n = 32") {
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 16, 32}) {
    Rng rng(1000 + static_cast<std::uint64_t>(n));
    const HermitianMatrix a = random_hermitian(rng, n);
    const EigenDecomposition e = eigh(a);
    CHECK(reconstruction_error(a, e) <= 1e-10 * (1.0 + a.mat().max_abs()));
    CHECK(unitarity_defect(e.vectors) <= 1e-10);
    for (std::size_t k = 1; k < e.values.size(); ++k)
      CHECK(e.values[k] <= e.values[k - 1]);
  }
}

TEST_CASE("eigh is deterministic") {
  Rng rng(77);
  const HermitianMatrix a = random_hermitian(rng, 6);
  const EigenDecomposition e1 = eigh(a), e2 = eigh(a);
  for (std::size_t k = 0; k < e1.values.size(); ++k)
    CHECK(e1.values[k] == e2.values[k]);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(e1.vectors(i, j) == e2.vectors(i, j));
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Matrix m(2);
  m(0, 1) = 0.5;
  m(1, 0) = 0.1;
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
}

TEST_CASE("polar identities") {
  const PolarDecomposition pi = polar(Matrix::identity(3));
  CHECK((pi.unitary.mat() - Matrix::identity(3)).max_abs() <= 1e-12);
  CHECK((pi.positive.mat() - Matrix::identity(3)).max_abs() <= 1e-12);

  const PolarDecomposition ps = polar(Matrix::diagonal(std::vector<double>{-2.0}));
  CHECK(ps.unitary.mat()(0, 0).real() == doctest::Approx(-1.0));
  CHECK(ps.positive.mat()(0, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("polar reconstructs 1e4 seeded random matrices") {
  int count = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Rng rng(static_cast<std::uint64_t>(trial));
    const int n = 1 + trial % 6;
    const Matrix x = random_matrix(rng, n);
    const PolarDecomposition pd = polar(x);
    const double scale = 1.0 + x.max_abs();
    REQUIRE((x - pd.unitary.mat() * pd.positive.mat()).max_abs() <= 1e-10 * scale);
    REQUIRE(pd.unitary.defect() <= 1e-10);
    REQUIRE(psd_margin(pd.positive) >= -1e-12 * scale);
    ++count;
  }
  CHECK(count == 10000);
}

TEST_CASE("polar completes the phase on singular input") {
  Rng rng(5);
  Matrix x = random_matrix(rng, 4);
  for (int i = 0; i < 4; ++i) x(i, 2) = 0.0;  // kill one column
  const PolarDecomposition pd = polar(x);
  CHECK(pd.unitary.defect() <= 1e-10);
  CHECK((x - pd.unitary.mat() * pd.positive.mat()).max_abs() <= 1e-10 * (1 + x.max_abs()));
}

TEST_CASE("matrix_function basics") {
  Rng rng(12);
  const HermitianMatrix a = random_psd(rng, 4);
  const HermitianMatrix same = matrix_function(a, [](double t) { return t; });
  CHECK((same.mat() - a.mat()).max_abs() <= 1e-12 * (1 + a.mat().max_abs()));

  const HermitianMatrix d(Matrix::diagonal(std::vector<double>{1.0, 4.0}));
  const HermitianMatrix r = matrix_function(d, [](double t) { return std::sqrt(t); });
  CHECK(r.mat()(0, 0).real() == doctest::Approx(1.0));
  CHECK(r.mat()(1, 1).real() == doctest::Approx(2.0));

  const HermitianMatrix sq = matrix_function(a, [](double t) { return t * t; });
  CHECK((sq.mat() - a.mat() * a.mat()).max_abs() <= 1e-10 * (1 + a.mat().max_abs()));
}

TEST_CASE("matrix_function composes") {
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(40 + static_cast<std::uint64_t>(trial));
    const HermitianMatrix a = random_psd(rng, 2 + trial % 5);
    const auto f = [](double t) { return std::sqrt(t); };
    const auto g = [](double t) { return t * t + 1.0; };
    const HermitianMatrix lhs =
        matrix_function(a, [&](double t) { return f(g(t)); });
    const HermitianMatrix rhs = matrix_function(matrix_function(a, g), f);
    CHECK((lhs.mat() - rhs.mat()).max_abs() <= 1e-9 * (1 + lhs.mat().max_abs()));
  }
}

TEST_CASE("matrix_function domain error names the eigenvalue") {
  const HermitianMatrix a(Matrix::diagonal(std::vector<double>{1.0, 0.0}));
  try {
    matrix_function(a, [](double t) { return 1.0 / t; }, "t^-1");
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Domain);
    CHECK(std::string(e.what()).find("0.0") != std::string::npos);
  }
}

TEST_CASE("contraction splits into two unitaries") {
  const auto [u1, u2] = contraction_to_unitaries(Matrix::identity(3));
  CHECK((u1.mat() - Matrix::identity(3)).max_abs() <= 1e-12);
  CHECK((u2.mat() - Matrix::identity(3)).max_abs() <= 1e-12);

  const auto [z1, z2] = contraction_to_unitaries(Matrix(1));
  CHECK(std::abs(z1.mat()(0, 0) - Complex(0, 1)) <= 1e-12);
  CHECK(std::abs(z2.mat()(0, 0) - Complex(0, -1)) <= 1e-12);

  const auto [c1, c2] =
      contraction_to_unitaries(Matrix::diagonal(std::vector<double>{0.6}));
  CHECK(std::abs(c1.mat()(0, 0) - Complex(0.6, 0.8)) <= 1e-12);
  CHECK(std::abs(c2.mat()(0, 0) - Complex(0.6, -0.8)) <= 1e-12);
  CHECK(std::abs(0.5 * (c1.mat()(0, 0) + c2.mat()(0, 0)) - Complex(0.6, 0)) <= 1e-12);
}

TEST_CASE("contraction split averages back for random contractions") {
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(900 + static_cast<std::uint64_t>(trial));
    const Matrix t = random_contraction(rng, 1 + trial % 5);
    const auto [u1, u2] = contraction_to_unitaries(t);
    CHECK(u1.defect() <= 1e-10);
    CHECK(u2.defect() <= 1e-10);
    Matrix avg = 0.5 * (u1.mat() + u2.mat());
    CHECK((avg - t).max_abs() <= 1e-10);
  }
}

TEST_CASE("contraction check rejects expansions") {
  CHECK_THROWS_AS(contraction_to_unitaries(Matrix::diagonal(std::vector<double>{1.5})),
                  Error);
}

TEST_CASE("elementary symmetric values") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  CHECK(elementary_symmetric(v, 0) == 1.0);
  CHECK(elementary_symmetric(v, 2) == doctest::Approx(11.0).epsilon(1e-15));
  CHECK_THROWS_AS(elementary_symmetric(v, 4), Error);
}

TEST_CASE("elementary symmetric matches subset enumeration") {
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(300 + static_cast<std::uint64_t>(trial));
    const int n = 1 + trial % 10;
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(rng.uniform(-2.0, 2.0));
    for (int m = 0; m <= n; ++m) {
      const double got = elementary_symmetric(v, m);
      const double want = subset_sum_oracle(v, m);
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("haar unitaries") {
  const UnitaryMatrix u1 = haar_unitary(1, 3);
  CHECK(std::abs(std::abs(u1.mat()(0, 0)) - 1.0) <= 1e-12);

  const UnitaryMatrix a = haar_unitary(4, 9), b = haar_unitary(4, 9);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(a.mat()(i, j) == b.mat()(i, j));

  CHECK(haar_unitary(6, 11).defect() <= 1e-10);
  const UnitaryMatrix c = haar_unitary(4, 10);
  CHECK((a.mat() - c.mat()).max_abs() > 1e-3);  // different seeds differ
}

TEST_CASE("haar samples look uniform in the coarse moments") {
  // E|u_00|^2 = 1/n for the invariant distribution
  double acc = 0;
  const int samples = 3000;
  for (int k = 0; k < samples; ++k)
    acc += std::norm(haar_unitary(4, 500000 + static_cast<std::uint64_t>(k)).mat()(0, 0));
  CHECK(acc / samples == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("psd margin") {
  CHECK(psd_margin(HermitianMatrix(Matrix::identity(3))) == doctest::Approx(1.0));
  CHECK(psd_margin(HermitianMatrix(Matrix::diagonal(std::vector<double>{1.0, -0.5}))) ==
        doctest::Approx(-0.5));
}

TEST_CASE("singular values match the Gram-matrix oracle") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(71 + static_cast<std::uint64_t>(trial));
    const Matrix x = random_matrix(rng, 2 + trial % 5);
    const std::vector<double> sv = singular_values(x);
    const EigenDecomposition g = eigh(HermitianMatrix(x.adjoint() * x));
    for (std::size_t k = 0; k < sv.size(); ++k)
      CHECK(sv[k] == doctest::Approx(std::sqrt(std::max(0.0, g.values[k])))
                         .epsilon(1e-9));
  }
}
