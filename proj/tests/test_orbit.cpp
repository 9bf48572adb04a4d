#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "antinorm/orbit.hpp"
#include "antinorm/random_inputs.hpp"
#include "doctest.h"

using namespace antinorm;

namespace {

double independent_margin(const Matrix& difference) {
  return psd_margin(HermitianMatrix(hermitian_part(difference)));
}

HermitianMatrix psd_from_values(Rng& rng, std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  const Matrix q = haar_unitary(n, rng.next()).mat();
  return HermitianMatrix(hermitian_part(q * Matrix::diagonal(values) * q.adjoint()));
}

}  // namespace

TEST_CASE("dominance alignment") {
  Rng rng(1);
  const HermitianMatrix a = random_psd(rng, 4);
  const WitnessResult same = dominance_unitary(a, a);
  CHECK(std::abs(same.psd_margin) <= 1e-10);

  const HermitianMatrix d1(Matrix::diagonal(std::vector<double>{1.0, 1.0}));
  const HermitianMatrix d2(Matrix::diagonal(std::vector<double>{3.0, 2.0}));
  const WitnessResult w = dominance_unitary(d1, d2);
  CHECK(w.psd_margin == doctest::Approx(1.0).epsilon(1e-10));

  for (int trial = 0; trial < 300; ++trial) {
    Rng r2(100 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 5;
    std::vector<double> lo, hi;
    for (int i = 0; i < n; ++i) {
      const double x = r2.uniform(0.0, 2.0), y = r2.uniform(0.0, 2.0);
      lo.push_back(std::min(x, y));
      hi.push_back(std::max(x, y));
    }
    std::sort(lo.rbegin(), lo.rend());
    std::sort(hi.rbegin(), hi.rend());
    const HermitianMatrix A = psd_from_values(r2, lo);
    const HermitianMatrix B = psd_from_values(r2, hi);
    const WitnessResult wit = dominance_unitary(A, B);
    REQUIRE(wit.psd_margin >= -1e-10);
    const Matrix& u = wit.unitaries[0];
    REQUIRE(independent_margin(B.mat() - u * A.mat() * u.adjoint()) >= -1e-10);
  }
}

TEST_CASE("dominance precondition names the violating index") {
  const HermitianMatrix a(Matrix::diagonal(std::vector<double>{3.0, 0.5}));
  const HermitianMatrix b(Matrix::diagonal(std::vector<double>{2.0, 1.0}));
  try {
    dominance_unitary(a, b);
    FAIL("expected a precondition failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
    CHECK(std::string(e.what()).find("index 0") != std::string::npos);
  }
}

TEST_CASE("dominance margin shifts exactly with an identity bump") {
  Rng rng(3);
  const HermitianMatrix a = random_psd(rng, 3);
  const HermitianMatrix b(a.mat() + random_psd(rng, 3).mat());
  const double base = dominance_unitary(a, b).psd_margin;
  for (double delta : {0.1, 0.5, 2.0}) {
    const HermitianMatrix shifted(b.mat() + delta * Matrix::identity(3));
    CHECK(dominance_unitary(a, shifted).psd_margin ==
          doctest::Approx(base + delta).epsilon(1e-8));
  }
}

TEST_CASE("arithmetic-geometric witness") {
  Rng rng(4);
  const HermitianMatrix a = random_psd(rng, 3, true);
  const HermitianMatrix zero(Matrix(3));
  const WitnessResult wz = agm_witness(a, zero);
  const double min_eig_a2 = psd_margin(HermitianMatrix(a.mat() * a.mat()));
  CHECK(wz.psd_margin == doctest::Approx(0.5 * min_eig_a2).epsilon(1e-8));

  const HermitianMatrix id(Matrix::identity(3));
  CHECK(std::abs(agm_witness(id, id).psd_margin) <= 1e-10);

  for (int trial = 0; trial < 1000; ++trial) {
    Rng r2(400 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 5;
    const HermitianMatrix A = random_psd(r2, n);
    const HermitianMatrix B = random_psd(r2, n);
    const WitnessResult w = agm_witness(A, B);
    REQUIRE(w.psd_margin >= -1e-9);
    const Matrix& v = w.unitaries[0];
    const Matrix rhs =
        0.5 * (A.mat() * A.mat() + v * (B.mat() * B.mat()) * v.adjoint());
    REQUIRE(independent_margin(rhs - polar(B.mat() * A.mat()).positive.mat()) >= -1e-9);
  }
}

TEST_CASE("triangle witness") {
  Rng rng(5);
  const Matrix x = random_matrix(rng, 3);
  // cancelling summands: the compared operator vanishes and the bound is slack
  // by exactly the two absolute values left on the right side
  const WitnessResult wz = triangle_witness(x, -1.0 * x);
  CHECK(wz.psd_margin >= -1e-9);
  CHECK(polar(x + -1.0 * x).positive.mat().max_abs() <= 1e-12);

  // commuting normal pair: everything is simultaneously diagonal
  {
    const Matrix q = haar_unitary(3, 17).mat();
    std::vector<Complex> dx{{1.0, 0.5}, {-0.3, 0.2}, {0.4, -1.0}};
    std::vector<Complex> dy{{0.2, -0.1}, {0.5, 0.8}, {-0.6, 0.3}};
    const Matrix X = q * Matrix::diagonal(dx) * q.adjoint();
    const Matrix Y = q * Matrix::diagonal(dy) * q.adjoint();
    const WitnessResult w = triangle_witness(X, Y);
    REQUIRE(w.psd_margin >= -1e-9);
    // diagonal oracle: margin of the same inequality computed entrywise
    double worst = 1e300;
    for (int i = 0; i < 3; ++i) {
      const double lhs = std::abs(dx[static_cast<std::size_t>(i)] + dy[static_cast<std::size_t>(i)]);
      const double rhs = std::abs(dx[static_cast<std::size_t>(i)]) + std::abs(dy[static_cast<std::size_t>(i)]);
      worst = std::min(worst, rhs - lhs);
    }
    CHECK(worst >= -1e-12);  // scalar triangle inequality
  }

  for (int trial = 0; trial < 1000; ++trial) {
    Rng r2(500 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 5;
    const Matrix X = random_matrix(r2, n), Y = random_matrix(r2, n);
    const WitnessResult w = triangle_witness(X, Y);
    REQUIRE(w.psd_margin >= -1e-9);
  }
}

TEST_CASE("orbit witnesses for the linear map are near-exact") {
  Rng rng(6);
  const HermitianMatrix a = random_psd(rng, 3);
  const HermitianMatrix b = random_psd(rng, 3);
  for (OrbitMode mode : {OrbitMode::ConvexSuper, OrbitMode::ConcaveSub}) {
    const WitnessResult w = orbit_witness(a, b, fn_identity(), mode, 0.0);
    CHECK(w.psd_margin >= -1e-9);
    CHECK(std::abs(w.psd_margin) <= 1e-8);
  }
}

TEST_CASE("diagonal convex orbit agrees with the permutation oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> da, db;
    for (int i = 0; i < 3; ++i) {
      da.push_back(rng.uniform(0.0, 2.0));
      db.push_back(rng.uniform(0.0, 2.0));
    }
    const HermitianMatrix A(Matrix::diagonal(da));
    const HermitianMatrix B(Matrix::diagonal(db));
    const WitnessResult w = orbit_witness(A, B, fn_power(2), OrbitMode::ConvexSuper, 0.0);
    REQUIRE(w.psd_margin >= -1e-10);

    // brute force over permutation pairs certifies existence independently
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    bool found = false;
    for (int pi = 0; pi < 6 && !found; ++pi) {
      for (int qi = 0; qi < 6 && !found; ++qi) {
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
          const double s = da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)];
          const double rhs = da[static_cast<std::size_t>(perm[pi][i])] * da[static_cast<std::size_t>(perm[pi][i])] +
                             db[static_cast<std::size_t>(perm[qi][i])] * db[static_cast<std::size_t>(perm[qi][i])];
          if (s * s + 1e-12 < rhs) ok = false;
        }
        if (ok) found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("concave orbit certifies the square root on random inputs") {
  for (int trial = 0; trial < 1000; ++trial) {
    Rng rng(600 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 5;
    const HermitianMatrix a = random_psd(rng, n);
    const HermitianMatrix b = random_psd(rng, n);
    const WitnessResult w = orbit_witness(a, b, fn_sqrt(), OrbitMode::ConcaveSub, 0.0);
    REQUIRE(w.psd_margin >= -1e-8);
    REQUIRE(w.unitaries.size() == 2);
    REQUIRE(unitarity_defect(w.unitaries[0]) <= 1e-9);
    REQUIRE(unitarity_defect(w.unitaries[1]) <= 1e-9);
  }
}

TEST_CASE("orbit rejects functions without the needed structure") {
  Rng rng(8);
  const HermitianMatrix a = random_psd(rng, 3);
  CHECK_THROWS_AS(orbit_witness(a, a, fn_sqrt(), OrbitMode::ConvexSuper, 0.0), Error);
  CHECK_THROWS_AS(orbit_witness(a, a, fn_power(2), OrbitMode::ConcaveSub, 0.0), Error);
}

TEST_CASE("mixed witness") {
  Rng rng(9);
  // with the second summand zero and the identity map the bound is tight
  const Matrix x = random_matrix(rng, 3);
  const WitnessResult w0 = mixed_witness(x, Matrix(3), fn_identity(), 0.0);
  CHECK(std::abs(w0.psd_margin) <= 1e-8);

  for (int trial = 0; trial < 500; ++trial) {
    Rng r2(700 + static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 5;
    Matrix a = random_matrix(r2, n), b = random_matrix(r2, n);
    if (trial % 3 == 0) {  // Hermitian positive corner
      a = random_psd(r2, n).mat();
      b = random_psd(r2, n).mat();
    }
    const WitnessResult w = mixed_witness(a, b, fn_power(2), 0.0);
    REQUIRE(w.psd_margin >= -1e-8);
  }

  CHECK_THROWS_AS(mixed_witness(x, x, fn_sqrt(), 0.0), Error);
}
