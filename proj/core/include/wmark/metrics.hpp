#pragma once

#include "wmark/matrix.hpp"

namespace wmark {

/// Mean squared error over all pixels. Shapes must match.
double mse(const RealMatrix& a, const RealMatrix& b);

/// 10*log10(peak^2 / MSE) in dB; +infinity when the images are identical.
double psnr(const RealMatrix& a, const RealMatrix& b, double peak = 255.0);

/// Signed cosine similarity sum(w .* w_est) / sqrt(sum(w^2) * sum(w_est^2)).
/// Symmetric, scale-invariant in each argument, bounded in [-1, 1].
/// Throws UndefinedCorrelation when either input is all zero.
double normalized_correlation(const RealMatrix& w, const RealMatrix& w_est);

}  // namespace wmark
