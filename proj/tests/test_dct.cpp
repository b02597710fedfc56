#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "synth.hpp"
#include "wmark/dct.hpp"
#include "wmark/errors.hpp"
#include "wmark/rng.hpp"

using namespace wmark;

TEST_CASE("dct2: constant image concentrates in the DC coefficient") {
  const RealMatrix x(4, 6, 1.0);
  const RealMatrix y = dct2_forward(x);
  CHECK(y(0, 0) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-14));
  for (std::size_t u = 0; u < y.rows(); ++u) {
    for (std::size_t v = 0; v < y.cols(); ++v) {
      if (u == 0 && v == 0) continue;
      CHECK(std::abs(y(u, v)) < 1e-12);
    }
  }
}

TEST_CASE("dct2: zero maps to zero both ways") {
  const RealMatrix z(5, 5, 0.0);
  CHECK(dct2_forward(z).max_abs() == 0.0);
  CHECK(dct2_inverse(z).max_abs() == 0.0);
}

TEST_CASE("dct2: agrees with the direct summation oracle") {
  const RealMatrix x = synth::random_matrix(8, 8, 8808, -10.0, 10.0);
  CHECK(max_abs_diff(dct2_forward(x), oracle::naive_dct2(x)) < 1e-10);

  const RealMatrix r = synth::random_matrix(6, 10, 610, -10.0, 10.0);
  CHECK(max_abs_diff(dct2_forward(r), oracle::naive_dct2(r)) < 1e-10);
}

TEST_CASE("dct2: unit DC coefficient inverts to a flat image") {
  RealMatrix y(3, 5, 0.0);
  y(0, 0) = 1.0;
  const RealMatrix x = dct2_inverse(y);
  const double expected = 1.0 / std::sqrt(15.0);
  for (double v : x.data()) CHECK(v == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("dct2: round trip is the identity") {
  const RealMatrix x = synth::random_matrix(16, 16, 1616, -255.0, 255.0);
  CHECK(max_abs_diff(dct2_inverse(dct2_forward(x)), x) < 1e-10);
}

TEST_CASE("dct2: energy is preserved") {
  SplitMix64 rng(0xDC7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 1 + rng.next() % 32;
    const std::size_t cols = 1 + rng.next() % 32;
    const RealMatrix x = synth::random_matrix(
        rows, cols, 0xDC70 + static_cast<std::uint64_t>(trial), -100.0, 100.0);
    const RealMatrix y = dct2_forward(x);
    CHECK(std::abs(y.sum_squares() - x.sum_squares()) <=
          1e-9 * std::max(x.sum_squares(), 1.0));
  }
}

TEST_CASE("dct2: rejects non-finite input") {
  RealMatrix bad(2, 2, 0.0);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(dct2_forward(bad), InvalidInput);
  CHECK_THROWS_AS(dct2_inverse(bad), InvalidInput);
}
