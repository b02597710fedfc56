#pragma once

#include "wmark/matrix.hpp"

namespace wmark {

/// The four subbands of one level of 2D DWT, each (rows/2) x (cols/2) of the
/// analyzed image. ll is the approximation; lh, hl, hh carry vertical,
/// horizontal and diagonal detail.
struct SubbandSet {
  RealMatrix ll;
  RealMatrix lh;
  RealMatrix hl;
  RealMatrix hh;
};

/// Orthonormal Haar analysis pair. The filter family is a fixed constant of
/// the toolkit, not a knob.
inline constexpr double kHaarLow[2] = {0.70710678118654752440,
                                       0.70710678118654752440};
inline constexpr double kHaarHigh[2] = {0.70710678118654752440,
                                        -0.70710678118654752440};

/// Single-level separable analysis (rows first, then columns).
/// Throws InvalidInput when either dimension is odd; callers pad explicitly.
SubbandSet dwt2_forward(const RealMatrix& x);

/// Single-level synthesis; exact inverse of dwt2_forward.
/// Throws InvalidInput when the four subbands disagree in shape.
RealMatrix dwt2_inverse(const SubbandSet& s);

}  // namespace wmark
