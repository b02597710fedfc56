#include "wmark/dwt.hpp"

#include "wmark/errors.hpp"

namespace wmark {

SubbandSet dwt2_forward(const RealMatrix& x) {
  if (x.empty()) throw InvalidInput("dwt2_forward: empty matrix");
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
    throw InvalidInput("dwt2_forward: dimensions must be even (pad first)");
  }
  const std::size_t hr = x.rows() / 2;
  const std::size_t hc = x.cols() / 2;

  // Row pass: filter and downsample along each row.
  RealMatrix row_lo(x.rows(), hc);
  RealMatrix row_hi(x.rows(), hc);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < hc; ++k) {
      const double a = x(i, 2 * k);
      const double b = x(i, 2 * k + 1);
      row_lo(i, k) = kHaarLow[0] * a + kHaarLow[1] * b;
      row_hi(i, k) = kHaarHigh[0] * a + kHaarHigh[1] * b;
    }
  }

  // Column pass on each half.
  SubbandSet out{RealMatrix(hr, hc), RealMatrix(hr, hc), RealMatrix(hr, hc),
                 RealMatrix(hr, hc)};
  for (std::size_t k = 0; k < hr; ++k) {
    for (std::size_t j = 0; j < hc; ++j) {
      const double lo_a = row_lo(2 * k, j);
      const double lo_b = row_lo(2 * k + 1, j);
      const double hi_a = row_hi(2 * k, j);
      const double hi_b = row_hi(2 * k + 1, j);
      out.ll(k, j) = kHaarLow[0] * lo_a + kHaarLow[1] * lo_b;
      out.hl(k, j) = kHaarHigh[0] * lo_a + kHaarHigh[1] * lo_b;
      out.lh(k, j) = kHaarLow[0] * hi_a + kHaarLow[1] * hi_b;
      out.hh(k, j) = kHaarHigh[0] * hi_a + kHaarHigh[1] * hi_b;
    }
  }
  return out;
}

RealMatrix dwt2_inverse(const SubbandSet& s) {
  if (s.ll.empty()) throw InvalidInput("dwt2_inverse: empty subbands");
  if (!s.ll.same_shape(s.lh) || !s.ll.same_shape(s.hl) ||
      !s.ll.same_shape(s.hh)) {
    throw InvalidInput("dwt2_inverse: subband shape mismatch");
  }
  const std::size_t hr = s.ll.rows();
  const std::size_t hc = s.ll.cols();

  // Column synthesis back to the half-width intermediates.
  RealMatrix row_lo(2 * hr, hc);
  RealMatrix row_hi(2 * hr, hc);
  for (std::size_t k = 0; k < hr; ++k) {
    for (std::size_t j = 0; j < hc; ++j) {
      row_lo(2 * k, j) = kHaarLow[0] * s.ll(k, j) + kHaarHigh[0] * s.hl(k, j);
      row_lo(2 * k + 1, j) = kHaarLow[1] * s.ll(k, j) + kHaarHigh[1] * s.hl(k, j);
      row_hi(2 * k, j) = kHaarLow[0] * s.lh(k, j) + kHaarHigh[0] * s.hh(k, j);
      row_hi(2 * k + 1, j) = kHaarLow[1] * s.lh(k, j) + kHaarHigh[1] * s.hh(k, j);
    }
  }

  // Row synthesis.
  RealMatrix out(2 * hr, 2 * hc);
  for (std::size_t i = 0; i < 2 * hr; ++i) {
    for (std::size_t k = 0; k < hc; ++k) {
      out(i, 2 * k) = kHaarLow[0] * row_lo(i, k) + kHaarHigh[0] * row_hi(i, k);
      out(i, 2 * k + 1) = kHaarLow[1] * row_lo(i, k) + kHaarHigh[1] * row_hi(i, k);
    }
  }
  return out;
}

}  // namespace wmark
