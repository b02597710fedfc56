#include "wmark/dct.hpp"

#include <cmath>
#include <numbers>

#include "wmark/errors.hpp"

namespace wmark {

namespace {

// Orthonormal DCT-II basis: basis(u, i) = s(u) * cos((2i+1)u*pi / 2n)
// with s(0) = sqrt(1/n) and s(u>0) = sqrt(2/n).
RealMatrix dct_basis(std::size_t n) {
  RealMatrix c(n, n);
  const double nf = static_cast<double>(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double su = u == 0 ? std::sqrt(1.0 / nf) : std::sqrt(2.0 / nf);
    for (std::size_t i = 0; i < n; ++i) {
      c(u, i) = su * std::cos((2.0 * static_cast<double>(i) + 1.0) *
                              static_cast<double>(u) * std::numbers::pi / (2.0 * nf));
    }
  }
  return c;
}

void require_finite(const RealMatrix& m, const char* who) {
  if (m.empty()) throw InvalidInput(std::string(who) + ": empty matrix");
  if (!m.all_finite()) throw InvalidInput(std::string(who) + ": non-finite entries");
}

}  // namespace

RealMatrix dct2_forward(const RealMatrix& x) {
  require_finite(x, "dct2_forward");
  const RealMatrix cm = dct_basis(x.rows());
  const RealMatrix cn = dct_basis(x.cols());
  return multiply(multiply(cm, x), transpose(cn));
}

RealMatrix dct2_inverse(const RealMatrix& y) {
  require_finite(y, "dct2_inverse");
  const RealMatrix cm = dct_basis(y.rows());
  const RealMatrix cn = dct_basis(y.cols());
  return multiply(multiply(transpose(cm), y), cn);
}

}  // namespace wmark
