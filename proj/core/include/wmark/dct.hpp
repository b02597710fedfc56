#pragma once

#include "wmark/matrix.hpp"

namespace wmark {

/// Orthonormal full-frame 2D DCT-II. Energy-preserving, so
/// sum(y^2) == sum(x^2) up to rounding.
RealMatrix dct2_forward(const RealMatrix& x);

/// Inverse of dct2_forward (orthonormal 2D DCT-III).
RealMatrix dct2_inverse(const RealMatrix& y);

}  // namespace wmark
