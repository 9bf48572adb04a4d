#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "antinorm/complex_matrix.hpp"

namespace antinorm {

struct EigenDecomposition {
  std::vector<double> values;  // sorted non-increasing
  Matrix vectors;              // unitary, columns match values

  Matrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Deterministic for a fixed
/// input: fixed sweep order, ties in the eigenvalue sort broken by the
/// phase-normalized eigenvector columns.
EigenDecomposition eigh(const HermitianMatrix& a);

struct PolarDecomposition {
  UnitaryMatrix unitary;     // U
  HermitianMatrix positive;  // P = |X|, PSD
};

/// X = U P with P = |X|. On ker|X| the phase is completed to a full unitary.
PolarDecomposition polar(const Matrix& x);

/// Q f(Lambda) Q*. Throws Domain naming the offending eigenvalue when f is
/// non-finite there.
HermitianMatrix matrix_function(const HermitianMatrix& a,
                                const std::function<double(double)>& f,
                                const char* fname = "f");

/// T = (U1 + U2)/2 for a contraction T, via |T| +- i sqrt(I - |T|^2).
std::pair<UnitaryMatrix, UnitaryMatrix> contraction_to_unitaries(const Matrix& t);

/// e_m of the values by the product-expansion recurrence; e_0 = 1.
double elementary_symmetric(std::span<const double> values, int m);

/// Haar-distributed unitary: Gaussian matrix orthonormalized with the R-diagonal
/// phase fixed positive. Deterministic per (n, seed).
UnitaryMatrix haar_unitary(int n, std::uint64_t seed);

/// Smallest eigenvalue; A is accepted as PSD at tolerance tol iff >= -tol.
double psd_margin(const HermitianMatrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& x);

/// All singular values, sorted non-increasing (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& x);

std::vector<double> eigenvalues_desc(const HermitianMatrix& a);

}  // namespace antinorm
