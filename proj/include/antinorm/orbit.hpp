#pragma once

#include <vector>

#include "antinorm/linalg.hpp"
#include "antinorm/scalar_function.hpp"

namespace antinorm {

struct WitnessResult {
  std::vector<Matrix> unitaries;
  double psd_margin = 0.0;
  enum class Method { Constructive, Search } method = Method::Constructive;
  double epsilon_used = 0.0;
};

struct WitnessBudget {
  int haar_seeds = 256;
  int refine_steps = 64;
};

/// Eigenbasis alignment U with U A U* <= B, given lambda_k(A) <= lambda_k(B)
/// for all k (checked; violation raises Precondition naming the index).
WitnessResult dominance_unitary(const HermitianMatrix& a, const HermitianMatrix& b);

/// V with |BA| <= (A^2 + V B^2 V*)/2, V* the phase of BA.
WitnessResult agm_witness(const HermitianMatrix& a, const HermitianMatrix& b);

/// W with |X+Y| <= (|X| + |Y| + W*(|X*| + |Y*|)W)/2, W the phase of X+Y.
WitnessResult triangle_witness(const Matrix& x, const Matrix& y);

enum class OrbitMode {
  ConvexSuper,  // g(A+B) + eps I >= U g(A) U* + V g(B) V*
  ConcaveSub,   // f(A+B) <= U f(A) U* + V f(B) V* + eps I
};

/// Constructive witness through the contraction decomposition of A against
/// A+B, with a seeded Haar search fallback. Accepted results are certified by
/// an independent psd_margin call.
WitnessResult orbit_witness(const HermitianMatrix& a, const HermitianMatrix& b,
                            const ScalarFunction& f, OrbitMode mode,
                            double eps = 0.0,
                            const WitnessBudget& budget = WitnessBudget{});

/// g(|X+Y|) <= (U g(|X|+|Y|) U* + V g(|X*|+|Y*|) V*)/2 + eps I for
/// non-decreasing convex g.
WitnessResult mixed_witness(const Matrix& x, const Matrix& y,
                            const ScalarFunction& g, double eps = 0.0,
                            const WitnessBudget& budget = WitnessBudget{});

}  // namespace antinorm
