#pragma once

#include "antinorm/linalg.hpp"
#include "antinorm/util.hpp"

namespace antinorm {

inline Matrix random_matrix(Rng& rng, int n) {
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = Complex(rng.gaussian(), rng.gaussian()) * 0.7071067811865476;
  return g;
}

inline HermitianMatrix random_hermitian(Rng& rng, int n) {
  return HermitianMatrix(hermitian_part(random_matrix(rng, n)));
}

/// G G* scaled by 1/n; with nonsingular set, spectrally shifted so the least
/// eigenvalue is at least 0.1.
inline HermitianMatrix random_psd(Rng& rng, int n, bool nonsingular = false) {
  Matrix g = random_matrix(rng, n);
  Matrix p = g * g.adjoint();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) /= n;
  HermitianMatrix h{hermitian_part(p)};
  if (nonsingular) {
    const double lo = psd_margin(h);
    if (lo < 0.1) {
      Matrix shifted = h.mat() + (0.1 - lo) * Matrix::identity(n);
      return HermitianMatrix(shifted);
    }
  }
  return h;
}

/// Random contraction: random matrix scaled just inside the unit ball.
inline Matrix random_contraction(Rng& rng, int n) {
  Matrix x = random_matrix(rng, n);
  const double s = spectral_norm(x);
  const double shrink = rng.uniform(0.2, 1.0) / (s + 1e-12);
  return shrink * x;
}

}  // namespace antinorm
