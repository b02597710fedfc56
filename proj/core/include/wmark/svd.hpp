#pragma once

#include <vector>

#include "wmark/matrix.hpp"

namespace wmark {

/// Full factorization a = u * diag(s) * v^T with u (m x m) and v (n x n)
/// orthogonal and s of length min(m, n), sorted non-increasing.
///
/// Sign convention: in each column of u the entry of largest absolute value
/// is non-negative (ties broken by lowest row index); the paired column of v
/// carries the compensating sign. This makes the factors reproducible across
/// platforms.
struct SvdFactors {
  RealMatrix u;
  std::vector<double> s;
  RealMatrix v;
};

/// Convergence threshold on the off-diagonal ratio |a_p . a_q| / (|a_p||a_q|).
inline constexpr double kSvdConvergenceTol = 1e-12;

/// Sweep cap; exceeding it raises ConvergenceError.
inline constexpr int kSvdMaxSweeps = 200;

/// One-sided Jacobi SVD with deterministic rotation ordering.
/// Throws InvalidInput on non-finite entries, ConvergenceError if the sweep
/// cap is exceeded.
SvdFactors svd_decompose(const RealMatrix& a);

/// Evaluates u * diag(s) * v^T. Throws InvalidInput when the factor
/// dimensions are mutually inconsistent.
RealMatrix svd_reconstruct(const SvdFactors& f);

}  // namespace wmark
