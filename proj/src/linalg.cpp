#include "antinorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "antinorm/util.hpp"

namespace antinorm {

namespace {

/// Multiply column j by the conjugate phase of its largest entry, making that
/// entry real positive. Deterministic representative of the eigenvector ray.
void normalize_column_phases(Matrix& q) {
  const int n = q.n();
  for (int j = 0; j < n; ++j) {
    int k = 0;
    double best = -1;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(q(i, j));
      if (m > best + 1e-12) {
        best = m;
        k = i;
      }
    }
    if (best <= 0) continue;
    const Complex d = std::conj(q(k, j)) / best;
    for (int i = 0; i < n; ++i) q(i, j) *= d;
  }
}

bool column_lex_less(const Matrix& q, int a, int b) {
  for (int i = 0; i < q.n(); ++i) {
    const Complex x = q(i, a), y = q(i, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

Matrix EigenDecomposition::reconstruct() const {
  const int n = vectors.n();
  Matrix scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = vectors(i, j) * values[static_cast<std::size_t>(j)];
  return scaled * vectors.adjoint();
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  const int n = h.n();
  Matrix a = h.mat();
  Matrix q = Matrix::identity(n);

  // Rotations stop on the relative criterion |a_pq| <= tol sqrt(|a_pp a_qq|),
  // which keeps small eigenvalues of graded matrices relatively accurate.
  bool rotated = true;
  for (int sweep = 0; sweep < 100 && rotated; ++sweep) {
    rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const Complex apq = a(p, r);
        const double g = std::abs(apq);
        const double local =
            std::sqrt(std::abs(a(p, p).real()) * std::abs(a(r, r).real()));
        if (g <= 1e-15 * local || g <= 1e-300) continue;
        rotated = true;
        const Complex phase = apq / g;  // a(p,r) = g * phase
        const double alpha = a(p, p).real();
        const double beta = a(r, r).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double tsign = tau >= 0 ? 1.0 : -1.0;
        const double tt = tsign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = tt * c;

        // Plane unitary V = [[phase*c, phase*s], [-s, c]] acting on (p, r).
        const Complex vpp = phase * c, vpr = phase * s;
        const Complex vrp = -s, vrr = c;

        for (int i = 0; i < n; ++i) {  // A <- A V
          const Complex aip = a(i, p), air = a(i, r);
          a(i, p) = aip * vpp + air * vrp;
          a(i, r) = aip * vpr + air * vrr;
        }
        for (int j = 0; j < n; ++j) {  // A <- V* A
          const Complex apj = a(p, j), arj = a(r, j);
          a(p, j) = std::conj(vpp) * apj + std::conj(vrp) * arj;
          a(r, j) = std::conj(vpr) * apj + std::conj(vrr) * arj;
        }
        a(p, p) = Complex(alpha - tt * g, 0.0);
        a(r, r) = Complex(beta + tt * g, 0.0);
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (int i = 0; i < n; ++i) {  // Q <- Q V
          const Complex qip = q(i, p), qir = q(i, r);
          q(i, p) = qip * vpp + qir * vrp;
          q(i, r) = qip * vpr + qir * vrr;
        }
      }
    }
  }

  normalize_column_phases(q);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double vi = a(i, i).real(), vj = a(j, j).real();
    if (vi != vj) return vi > vj;
    return column_lex_less(q, i, j);
  });

  EigenDecomposition out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = Matrix(n);
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<double> eigenvalues_desc(const HermitianMatrix& a) {
  return eigh(a).values;
}

double psd_margin(const HermitianMatrix& a) { return eigh(a).values.back(); }

namespace {

/// Modified Gram-Schmidt with two projection passes; zero columns are replaced
/// from the canonical basis so the result is always a full unitary.
Matrix orthonormalize_columns(Matrix w) {
  const int n = w.n();
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Complex r = 0;
        for (int i = 0; i < n; ++i) r += std::conj(w(i, k)) * w(i, j);
        for (int i = 0; i < n; ++i) w(i, j) -= r * w(i, k);
      }
    }
    double nrm = 0;
    for (int i = 0; i < n; ++i) nrm += std::norm(w(i, j));
    nrm = std::sqrt(nrm);
    if (nrm > 1e-8) {
      for (int i = 0; i < n; ++i) w(i, j) /= nrm;
      continue;
    }
    // Degenerate column: take the first basis vector independent of the span.
    for (int e = 0; e < n; ++e) {
      for (int i = 0; i < n; ++i) w(i, j) = (i == e) ? 1.0 : 0.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < j; ++k) {
          Complex r = 0;
          for (int i = 0; i < n; ++i) r += std::conj(w(i, k)) * w(i, j);
          for (int i = 0; i < n; ++i) w(i, j) -= r * w(i, k);
        }
      }
      double m2 = 0;
      for (int i = 0; i < n; ++i) m2 += std::norm(w(i, j));
      if (m2 > 0.25) {
        const double inv = 1.0 / std::sqrt(m2);
        for (int i = 0; i < n; ++i) w(i, j) *= inv;
        break;
      }
    }
  }
  return w;
}

}  // namespace

namespace {

struct OneSidedJacobi {
  Matrix columns;  // X V, mutually orthogonal columns, sorted by norm desc
  Matrix v;        // accumulated right rotations
  std::vector<double> sigma;
};

/// One-sided Jacobi SVD: rotates column pairs of X to mutual orthogonality.
/// Never forms X*X, so singular values keep high relative accuracy even for
/// strongly graded inputs.
OneSidedJacobi one_sided_jacobi(const Matrix& x) {
  const int n = x.n();
  Matrix a = x;
  Matrix v = Matrix::identity(n);

  bool rotated = true;
  for (int sweep = 0; sweep < 100 && rotated; ++sweep) {
    rotated = false;
    for (int j = 0; j < n - 1; ++j) {
      for (int k = j + 1; k < n; ++k) {
        double ajj = 0, akk = 0;
        Complex ajk = 0;
        for (int i = 0; i < n; ++i) {
          ajj += std::norm(a(i, j));
          akk += std::norm(a(i, k));
          ajk += std::conj(a(i, j)) * a(i, k);
        }
        const double g = std::abs(ajk);
        if (g <= 1e-15 * std::sqrt(ajj * akk) || g <= 1e-300) continue;
        rotated = true;
        const Complex phase = ajk / g;
        const double tau = (akk - ajj) / (2.0 * g);
        const double tsign = tau >= 0 ? 1.0 : -1.0;
        const double tt = tsign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = tt * c;
        const Complex vjj = phase * c, vjk = phase * s;
        const Complex vkj = -s, vkk = c;
        for (int i = 0; i < n; ++i) {
          const Complex aj = a(i, j), ak = a(i, k);
          a(i, j) = aj * vjj + ak * vkj;
          a(i, k) = aj * vjk + ak * vkk;
          const Complex vj = v(i, j), vk = v(i, k);
          v(i, j) = vj * vjj + vk * vkj;
          v(i, k) = vj * vjk + vk * vkk;
        }
      }
    }
  }

  OneSidedJacobi out;
  out.sigma.resize(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double s2 = 0;
    for (int i = 0; i < n; ++i) s2 += std::norm(a(i, j));
    out.sigma[static_cast<std::size_t>(j)] = std::sqrt(s2);
    order[static_cast<std::size_t>(j)] = j;
  }
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (out.sigma[static_cast<std::size_t>(i)] != out.sigma[static_cast<std::size_t>(j)])
      return out.sigma[static_cast<std::size_t>(i)] > out.sigma[static_cast<std::size_t>(j)];
    return i < j;
  });
  OneSidedJacobi sorted;
  sorted.columns = Matrix(n);
  sorted.v = Matrix(n);
  sorted.sigma.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    sorted.sigma[static_cast<std::size_t>(j)] = out.sigma[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) {
      sorted.columns(i, j) = a(i, src);
      sorted.v(i, j) = v(i, src);
    }
  }
  return sorted;
}

}  // namespace

std::vector<double> singular_values(const Matrix& x) {
  return one_sided_jacobi(x).sigma;
}

PolarDecomposition polar(const Matrix& x) {
  const int n = x.n();
  const OneSidedJacobi svd = one_sided_jacobi(x);
  const double cut = 1e-14 * std::max(svd.sigma.front(), 1e-300);

  Matrix w(n);
  for (int j = 0; j < n; ++j) {
    if (svd.sigma[static_cast<std::size_t>(j)] > cut) {
      for (int i = 0; i < n; ++i)
        w(i, j) = svd.columns(i, j) / svd.sigma[static_cast<std::size_t>(j)];
    }
    // kernel columns stay zero; orthonormalization completes the phase
  }
  w = orthonormalize_columns(std::move(w));

  Matrix p_scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p_scaled(i, j) = svd.v(i, j) * svd.sigma[static_cast<std::size_t>(j)];
  const Matrix p = p_scaled * svd.v.adjoint();

  return PolarDecomposition{UnitaryMatrix(w * svd.v.adjoint()),
                            HermitianMatrix(hermitian_part(p))};
}

HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& f,
                                const char* fname) {
  const EigenDecomposition e = eigh(a);
  const int n = a.n();
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) {
    fv[i] = f(e.values[i]);
    if (!std::isfinite(fv[i]))
      fail(ErrorCode::Domain, std::string(fname) + " is undefined at eigenvalue " +
                                  std::to_string(e.values[i]));
  }
  Matrix scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = e.vectors(i, j) * fv[static_cast<std::size_t>(j)];
  return HermitianMatrix(hermitian_part(scaled * e.vectors.adjoint()));
}

std::pair<UnitaryMatrix, UnitaryMatrix> contraction_to_unitaries(const Matrix& t) {
  const double top = spectral_norm(t);
  if (top > 1.0 + 1e-12)
    fail(ErrorCode::Precondition,
         "not a contraction: largest singular value " + std::to_string(top));

  const PolarDecomposition pd = polar(t);
  const Matrix& p = pd.positive.mat();
  const Matrix ss = matrix_function(
      HermitianMatrix(Matrix::identity(t.n()) - p * p),
      [](double v) { return std::sqrt(std::max(0.0, v)); }, "sqrt").mat();

  const Complex i_unit(0.0, 1.0);
  const Matrix v1 = p + i_unit * ss;
  const Matrix v2 = p - i_unit * ss;
  return {UnitaryMatrix(pd.unitary.mat() * v1), UnitaryMatrix(pd.unitary.mat() * v2)};
}

double elementary_symmetric(std::span<const double> values, int m) {
  const int n = static_cast<int>(values.size());
  if (m < 0 || m > n)
    fail(ErrorCode::InvalidArgument,
         "elementary symmetric degree " + std::to_string(m) + " out of range for " +
             std::to_string(n) + " values");
  std::vector<double> e(static_cast<std::size_t>(m) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    for (int k = std::min(m, i + 1); k >= 1; --k)
      e[static_cast<std::size_t>(k)] += v * e[static_cast<std::size_t>(k) - 1];
  }
  return e[static_cast<std::size_t>(m)];
}

UnitaryMatrix haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  Rng rng(mix_seed(0x9aa2ULL, mix_seed(static_cast<std::uint64_t>(n), seed)));
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return UnitaryMatrix(orthonormalize_columns(std::move(g)));
}

double spectral_norm(const Matrix& x) { return singular_values(x).front(); }

}  // namespace antinorm
