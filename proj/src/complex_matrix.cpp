#include "antinorm/complex_matrix.hpp"

#include <cmath>

namespace antinorm {

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (o.n_ != n_) fail(ErrorCode::InvalidArgument, "dimension mismatch in +");
  Matrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (o.n_ != n_) fail(ErrorCode::InvalidArgument, "dimension mismatch in -");
  Matrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) fail(ErrorCode::InvalidArgument, "dimension mismatch in +=");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (o.n_ != n_) fail(ErrorCode::InvalidArgument, "dimension mismatch in *");
  Matrix r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

double Matrix::max_abs() const {
  double m = 0;
  for (const Complex& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool Matrix::all_finite() const {
  for (const Complex& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Matrix operator*(double c, const Matrix& m) {
  Matrix r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r(i, j) = c * m(i, j);
  return r;
}

Matrix operator*(const Complex& c, const Matrix& m) {
  Matrix r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r(i, j) = c * m(i, j);
  return r;
}

double hermiticity_defect(const Matrix& m) {
  double d = 0;
  for (int i = 0; i < m.n(); ++i)
    for (int j = i; j < m.n(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

Matrix hermitian_part(const Matrix& m) {
  Matrix r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return r;
}

double unitarity_defect(const Matrix& u) {
  const Matrix g = u.adjoint() * u;
  double d = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      d = std::max(d, std::abs(g(i, j) - want));
    }
  return d;
}

}  // namespace antinorm
