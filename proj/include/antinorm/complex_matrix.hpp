#pragma once

#include <complex>
#include <vector>

#include "antinorm/error.hpp"

namespace antinorm {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n <= 0) fail(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  static Matrix diagonal(const std::vector<Complex>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  int n() const { return n_; }

  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  Matrix adjoint() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix& operator+=(const Matrix& o);

  Complex trace() const {
    Complex t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Re Tr / n; the normalized trace of a Hermitian matrix.
  double trace_normalized() const { return trace().real() / n_; }

  double max_abs() const;
  bool all_finite() const;

private:
  int n_ = 0;
  std::vector<Complex> a_;
};

Matrix operator*(double c, const Matrix& m);
Matrix operator*(const Complex& c, const Matrix& m);

/// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_defect(const Matrix& m);
/// (M + M*)/2
Matrix hermitian_part(const Matrix& m);
/// max |(U*U - I)(i,j)|
double unitarity_defect(const Matrix& u);

/// Hermitian matrix validated on construction; stores the exactly symmetrized
/// part so downstream spectral code never sees asymmetry.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const Matrix& m) : defect_(hermiticity_defect(m)) {
    const double tol = 1e-12 * (1.0 + m.max_abs());
    if (!m.all_finite())
      fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    if (defect_ > tol)
      fail(ErrorCode::Precondition,
           "matrix is not Hermitian: defect " + std::to_string(defect_) +
               " exceeds tolerance " + std::to_string(tol));
    m_ = hermitian_part(m);
  }

  const Matrix& mat() const { return m_; }
  int n() const { return m_.n(); }
  double defect() const { return defect_; }

private:
  Matrix m_;
  double defect_ = 0;
};

class UnitaryMatrix {
public:
  explicit UnitaryMatrix(const Matrix& m) : m_(m), defect_(unitarity_defect(m)) {
    if (defect_ > 1e-10)
      fail(ErrorCode::Precondition,
           "matrix is not unitary: defect " + std::to_string(defect_));
  }

  const Matrix& mat() const { return m_; }
  int n() const { return m_.n(); }
  double defect() const { return defect_; }

private:
  Matrix m_;
  double defect_ = 0;
};

}  // namespace antinorm
