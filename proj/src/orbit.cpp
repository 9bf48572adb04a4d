#include "antinorm/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "antinorm/util.hpp"

namespace antinorm {

namespace {

double certify(const Matrix& difference) {
  return psd_margin(HermitianMatrix(hermitian_part(difference)));
}

/// Eigenbasis alignment Q_b Q_a*: maps the ordered eigenbasis of a onto that
/// of b, so conjugation compares sorted eigenvalues directly.
Matrix alignment_unitary(const HermitianMatrix& a, const HermitianMatrix& b) {
  return eigh(b).vectors * eigh(a).vectors.adjoint();
}

HermitianMatrix clamp_to_unit_interval(const HermitianMatrix& c) {
  return matrix_function(
      c, [](double v) { return std::min(1.0, std::max(0.0, v)); }, "clamp");
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  return matrix_function(
      a, [](double v) { return std::sqrt(std::max(0.0, v)); }, "sqrt");
}

double apply_nonneg(const ScalarFunction& f, double v) {
  return f(std::max(0.0, v));
}

}  // namespace

WitnessResult dominance_unitary(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n() != b.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  const EigenDecomposition ea = eigh(a), eb = eigh(b);
  const double scale = 1.0 + std::max(std::abs(ea.values.front()),
                                      std::abs(eb.values.front()));
  for (std::size_t k = 0; k < ea.values.size(); ++k) {
    if (ea.values[k] > eb.values[k] + 1e-12 * scale)
      fail(ErrorCode::Precondition,
           "spectral dominance fails at index " + std::to_string(k) + ": " +
               std::to_string(ea.values[k]) + " > " + std::to_string(eb.values[k]));
  }
  const Matrix u = eb.vectors * ea.vectors.adjoint();
  WitnessResult w;
  w.unitaries = {u};
  w.psd_margin = certify(b.mat() - u * a.mat() * u.adjoint());
  w.method = WitnessResult::Method::Constructive;
  return w;
}

WitnessResult agm_witness(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n() != b.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  const Matrix ba = b.mat() * a.mat();
  const PolarDecomposition pd = polar(ba);
  const Matrix v = pd.unitary.mat().adjoint();  // BA = V* |BA|
  const Matrix rhs =
      0.5 * (a.mat() * a.mat() + v * (b.mat() * b.mat()) * v.adjoint());
  WitnessResult w;
  w.unitaries = {v};
  w.psd_margin = certify(rhs - pd.positive.mat());
  return w;
}

WitnessResult triangle_witness(const Matrix& x, const Matrix& y) {
  if (x.n() != y.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  const PolarDecomposition sum = polar(x + y);
  const Matrix& w = sum.unitary.mat();
  const Matrix absx = polar(x).positive.mat();
  const Matrix absy = polar(y).positive.mat();
  const Matrix absxs = polar(x.adjoint()).positive.mat();
  const Matrix absys = polar(y.adjoint()).positive.mat();
  const Matrix rhs =
      0.5 * (absx + absy + w.adjoint() * (absxs + absys) * w);
  WitnessResult res;
  res.unitaries = {w};
  res.psd_margin = certify(rhs - sum.positive.mat());
  return res;
}

namespace {

struct OrbitParts {
  HermitianMatrix f_sum;  // f(A+B) (with f(0) subtracted where applicable)
  HermitianMatrix f_a;
  HermitianMatrix f_b;
  Matrix u;
  Matrix v;
  double base;  // f(0), added back on the dominated side
};

/// Contraction split of A and B against T = A+B: with C_x = T^{+1/2} X T^{+1/2}
/// (pseudo-inverse on ker T, where A and B vanish too), f(T) decomposes into
/// two pieces unitarily equivalent to C_x^{1/2} f(T) C_x^{1/2}, each spectrally
/// comparable with f(X).
OrbitParts build_orbit_parts(const HermitianMatrix& a, const HermitianMatrix& b,
                             const ScalarFunction& f, OrbitMode mode) {
  const int n = a.n();
  const HermitianMatrix t(a.mat() + b.mat());
  const EigenDecomposition et = eigh(t);
  const double cut = 1e-12 * std::max(et.values.front(), 0.0) + 1e-300;

  Matrix scaledq(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double lam = et.values[static_cast<std::size_t>(j)];
      const double w = lam > cut ? 1.0 / std::sqrt(lam) : 0.0;
      scaledq(i, j) = et.vectors(i, j) * w;
    }
  const Matrix tph = scaledq * et.vectors.adjoint();  // T^{+1/2}

  const HermitianMatrix ca =
      clamp_to_unit_interval(HermitianMatrix(hermitian_part(tph * a.mat() * tph)));
  const HermitianMatrix cb =
      clamp_to_unit_interval(HermitianMatrix(hermitian_part(tph * b.mat() * tph)));

  const double base = mode == OrbitMode::ConcaveSub ? f(0.0) : 0.0;
  const auto f0 = [&](double v) { return apply_nonneg(f, v) - base; };

  const HermitianMatrix g_t = matrix_function(t, f0, f.description.c_str());
  const HermitianMatrix g_a = matrix_function(a, f0, f.description.c_str());
  const HermitianMatrix g_b = matrix_function(b, f0, f.description.c_str());
  const HermitianMatrix gh = psd_sqrt(g_t);
  const HermitianMatrix ca_h = psd_sqrt(ca);
  const HermitianMatrix cb_h = psd_sqrt(cb);

  const Matrix sa = ca_h.mat() * gh.mat();
  const Matrix sb = cb_h.mat() * gh.mat();
  const Matrix wa = polar(sa).unitary.mat();
  const Matrix wb = polar(sb).unitary.mat();
  const HermitianMatrix da(hermitian_part(ca_h.mat() * g_t.mat() * ca_h.mat()));
  const HermitianMatrix db(hermitian_part(cb_h.mat() * g_t.mat() * cb_h.mat()));

  // Both modes align the ordered eigenbases of f(X) and D_x; only the
  // direction of the spectral comparison differs (D_x dominates g(X) in the
  // convex case, f0(X) dominates D_x in the concave case).
  const Matrix ua = alignment_unitary(g_a, da);
  const Matrix ub = alignment_unitary(g_b, db);
  const Matrix u = wa.adjoint() * ua;
  const Matrix v = wb.adjoint() * ub;
  (void)mode;
  return OrbitParts{g_t, g_a, g_b, u, v, base};
}

double orbit_margin(const HermitianMatrix& a, const HermitianMatrix& b,
                    const ScalarFunction& f, OrbitMode mode, double eps,
                    const Matrix& u, const Matrix& v) {
  const int n = a.n();
  const HermitianMatrix t(a.mat() + b.mat());
  const auto fn = [&](double x) { return apply_nonneg(f, x); };
  const Matrix ft = matrix_function(t, fn, f.description.c_str()).mat();
  const Matrix fa = matrix_function(a, fn, f.description.c_str()).mat();
  const Matrix fb = matrix_function(b, fn, f.description.c_str()).mat();
  const Matrix shift = eps * Matrix::identity(n);
  if (mode == OrbitMode::ConvexSuper)
    return certify(ft + shift - u * fa * u.adjoint() - v * fb * v.adjoint());
  return certify(u * fa * u.adjoint() + v * fb * v.adjoint() + shift - ft);
}

/// Random special-unitary perturbation close to the identity.
Matrix geodesic_step(Rng& rng, int n, double step) {
  Matrix h(n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(rng.gaussian(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = Complex(rng.gaussian(), rng.gaussian()) * 0.7071067811865476;
      h(j, i) = std::conj(h(i, j));
    }
  }
  // exp(i step H) via the eigendecomposition of H.
  const EigenDecomposition e = eigh(HermitianMatrix(h));
  Matrix scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double phi = step * e.values[static_cast<std::size_t>(j)];
      scaled(i, j) = e.vectors(i, j) * Complex(std::cos(phi), std::sin(phi));
    }
  return scaled * e.vectors.adjoint();
}

}  // namespace

WitnessResult orbit_witness(const HermitianMatrix& a, const HermitianMatrix& b,
                            const ScalarFunction& f, OrbitMode mode, double eps,
                            const WitnessBudget& budget) {
  if (a.n() != b.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  if (eps < 0) fail(ErrorCode::InvalidArgument, "eps must be >= 0");
  if (mode == OrbitMode::ConvexSuper &&
      (!f.has(FnProperty::Convex) || !f.has(FnProperty::ZeroAtZero)))
    fail(ErrorCode::Precondition,
         "convex mode needs a function flagged convex with value 0 at 0");
  if (mode == OrbitMode::ConcaveSub && !f.has(FnProperty::Concave))
    fail(ErrorCode::Precondition, "concave mode needs a function flagged concave");

  const OrbitParts parts = build_orbit_parts(a, b, f, mode);
  WitnessResult w;
  w.unitaries = {parts.u, parts.v};
  w.psd_margin = orbit_margin(a, b, f, mode, eps, parts.u, parts.v);
  w.method = WitnessResult::Method::Constructive;
  w.epsilon_used = eps;
  if (w.psd_margin >= -1e-8) return w;

  // Safety net: the existence of a witness is guaranteed, so a failed
  // constructive margin signals conditioning trouble; retry by seeded search.
  double best = w.psd_margin;
  Matrix bu = parts.u, bv = parts.v;
  for (int s = 0; s < budget.haar_seeds; ++s) {
    Matrix u = s == 0 ? parts.u : haar_unitary(a.n(), 0xabcdULL + s).mat();
    Matrix v = s == 0 ? parts.v : haar_unitary(a.n(), 0xdcbaULL + s).mat();
    double cur = orbit_margin(a, b, f, mode, eps, u, v);
    Rng rng(mix_seed(0x0b17, s));
    double step = 0.5;
    for (int it = 0; it < budget.refine_steps; ++it) {
      const Matrix du = geodesic_step(rng, a.n(), step);
      const Matrix dv = geodesic_step(rng, a.n(), step);
      const Matrix u2 = du * u, v2 = dv * v;
      const double m2 = orbit_margin(a, b, f, mode, eps, u2, v2);
      if (m2 > cur) {
        cur = m2;
        u = u2;
        v = v2;
      } else {
        step *= 0.85;
      }
      if (cur >= -1e-8) break;
    }
    if (cur > best) {
      best = cur;
      bu = u;
      bv = v;
    }
    if (best >= -1e-8) break;
  }
  if (best < -1e-8)
    fail(ErrorCode::WitnessNotFound,
         "no witness within budget; best margin " + std::to_string(best));
  w.unitaries = {bu, bv};
  w.psd_margin = best;
  w.method = WitnessResult::Method::Search;
  return w;
}

WitnessResult mixed_witness(const Matrix& x, const Matrix& y,
                            const ScalarFunction& g, double eps,
                            const WitnessBudget& budget) {
  if (x.n() != y.n()) fail(ErrorCode::InvalidArgument, "dimension mismatch");
  if (!g.has(FnProperty::NonDecreasing) || !g.has(FnProperty::Convex))
    fail(ErrorCode::Precondition,
         "mixed witness needs a function flagged non-decreasing and convex");

  const int n = x.n();
  const PolarDecomposition sum = polar(x + y);
  const Matrix& w = sum.unitary.mat();
  const HermitianMatrix r(polar(x).positive.mat() + polar(y).positive.mat());
  const HermitianMatrix rs(polar(x.adjoint()).positive.mat() +
                           polar(y.adjoint()).positive.mat());

  const auto gn = [&](double v) { return apply_nonneg(g, v); };
  const HermitianMatrix g_sum = matrix_function(sum.positive, gn, g.description.c_str());
  const Matrix g_r = matrix_function(r, gn, g.description.c_str()).mat();
  const Matrix g_rs = matrix_function(rs, gn, g.description.c_str()).mat();

  const HermitianMatrix avg(
      hermitian_part(0.5 * (g_r + w.adjoint() * g_rs * w)));
  const Matrix u0 = alignment_unitary(avg, g_sum);  // g_sum <= u0 avg u0*

  const auto margin_for = [&](const Matrix& u, const Matrix& v) {
    const Matrix rhs = 0.5 * (u * g_r * u.adjoint() + v * g_rs * v.adjoint()) +
                       eps * Matrix::identity(n);
    return certify(rhs - g_sum.mat());
  };

  WitnessResult res;
  res.unitaries = {u0, u0 * w.adjoint()};
  res.psd_margin = margin_for(res.unitaries[0], res.unitaries[1]);
  res.epsilon_used = eps;
  if (res.psd_margin >= -1e-8) return res;

  double best = res.psd_margin;
  Matrix bu = res.unitaries[0], bv = res.unitaries[1];
  for (int s = 0; s < budget.haar_seeds; ++s) {
    Matrix u = s == 0 ? res.unitaries[0] : haar_unitary(n, 0x331dULL + s).mat();
    Matrix v = s == 0 ? res.unitaries[1] : haar_unitary(n, 0x772fULL + s).mat();
    double cur = margin_for(u, v);
    Rng rng(mix_seed(0x311, s));
    double step = 0.5;
    for (int it = 0; it < budget.refine_steps; ++it) {
      const Matrix u2 = geodesic_step(rng, n, step) * u;
      const Matrix v2 = geodesic_step(rng, n, step) * v;
      const double m2 = margin_for(u2, v2);
      if (m2 > cur) {
        cur = m2;
        u = u2;
        v = v2;
      } else {
        step *= 0.85;
      }
      if (cur >= -1e-8) break;
    }
    if (cur > best) {
      best = cur;
      bu = u;
      bv = v;
    }
    if (best >= -1e-8) break;
  }
  if (best < -1e-8)
    fail(ErrorCode::WitnessNotFound,
         "no witness within budget; best margin " + std::to_string(best));
  res.unitaries = {bu, bv};
  res.psd_margin = best;
  res.method = WitnessResult::Method::Search;
  return res;
}

}  // namespace antinorm
