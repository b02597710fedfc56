#include "synth.hpp"

#include <algorithm>
#include <cmath>

#include "wmark/image_io.hpp"
#include "wmark/rng.hpp"

namespace wmark::synth {

RealMatrix random_matrix(std::size_t rows, std::size_t cols,
                         std::uint64_t seed, double lo, double hi) {
  SplitMix64 rng(seed);
  RealMatrix out(rows, cols);
  for (double& v : out.data()) v = lo + (hi - lo) * rng.uniform01();
  return out;
}

namespace {

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

RealMatrix synth_host(std::uint64_t index, std::size_t size) {
  SplitMix64 rng(mix_seed(0x5eedb0d1e5ull, index));
  const double n = static_cast<double>(size);

  const double base = 90.0 + 50.0 * rng.uniform01();
  const double grad_x = -40.0 + 80.0 * rng.uniform01();
  const double grad_y = -40.0 + 80.0 * rng.uniform01();

  struct Bump {
    double cy, cx, amp, sigma;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < 4; ++k) {
    bumps.push_back({n * rng.uniform01(), n * rng.uniform01(),
                     -50.0 + 130.0 * rng.uniform01(),
                     n / 10.0 + (n / 4.0 - n / 10.0) * rng.uniform01()});
  }
  struct Disc {
    double cy, cx, amp, radius, edge;
  };
  std::vector<Disc> discs;
  for (int k = 0; k < 3; ++k) {
    discs.push_back({n * (0.15 + 0.7 * rng.uniform01()),
                     n * (0.15 + 0.7 * rng.uniform01()),
                     -45.0 + 115.0 * rng.uniform01(),
                     n / 8.0 + (n / 3.0 - n / 8.0) * rng.uniform01(),
                     std::max(3.0, n / 32.0)});
  }

  // Low-frequency texture: a coarse random grid upsampled bilinearly.
  const std::size_t grid = std::max<std::size_t>(4, size / 32);
  RealMatrix coarse(grid, grid);
  for (double& v : coarse.data()) v = -8.0 + 16.0 * rng.uniform01();
  const RealMatrix texture = resize_bilinear(coarse, size, size);

  RealMatrix out(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    const double y = static_cast<double>(i);
    for (std::size_t j = 0; j < size; ++j) {
      const double x = static_cast<double>(j);
      double v = base + grad_x * (x / n - 0.5) + grad_y * (y / n - 0.5);
      for (const Bump& b : bumps) {
        const double d2 = (y - b.cy) * (y - b.cy) + (x - b.cx) * (x - b.cx);
        v += b.amp * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
      }
      for (const Disc& d : discs) {
        const double dist =
            std::sqrt((y - d.cy) * (y - d.cy) + (x - d.cx) * (x - d.cx));
        v += d.amp * smoothstep((d.radius - dist) / d.edge);
      }
      v += texture(i, j);
      out(i, j) = v;
    }
  }
  // Mild fine-grained noise keeps the detail band from being empty.
  for (double& v : out.data()) {
    v += -2.2 + 4.4 * rng.uniform01();
    v = std::clamp(v, 5.0, 250.0);
  }
  return out;
}

RealMatrix synth_logo(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(mix_seed(0x10600aabull, seed));
  RealMatrix out(rows, cols, 12.0);

  // Glyph-ish marks: an asymmetric grid of filled cells. Layout varies with
  // the seed so two logos differ structurally, not just in fill pattern.
  const std::size_t cell_rows = 3 + rng.next() % 4;
  const std::size_t cell_cols = 5 + rng.next() % 5;
  const std::size_t margin_r = rows / (6 + rng.next() % 8);
  const std::size_t margin_c = cols / (6 + rng.next() % 8);
  const double cell_h =
      static_cast<double>(rows - 2 * margin_r) / static_cast<double>(cell_rows);
  const double cell_w =
      static_cast<double>(cols - 2 * margin_c) / static_cast<double>(cell_cols);
  const double fill_threshold = 0.3 + 0.3 * rng.uniform01();
  for (std::size_t cr = 0; cr < cell_rows; ++cr) {
    for (std::size_t cc = 0; cc < cell_cols; ++cc) {
      const double fill = rng.uniform01();
      const double value = 170.0 + 85.0 * rng.uniform01();
      if (fill < fill_threshold) continue;
      const std::size_t r0 =
          margin_r + static_cast<std::size_t>(cell_h * static_cast<double>(cr)) + 1;
      const std::size_t r1 =
          margin_r + static_cast<std::size_t>(cell_h * (static_cast<double>(cr) + 0.8));
      const std::size_t c0 =
          margin_c + static_cast<std::size_t>(cell_w * static_cast<double>(cc)) + 1;
      const std::size_t c1 =
          margin_c + static_cast<std::size_t>(cell_w * (static_cast<double>(cc) + 0.7));
      for (std::size_t i = r0; i < std::min(r1, rows); ++i) {
        for (std::size_t j = c0; j < std::min(c1, cols); ++j) {
          out(i, j) = value;
        }
      }
    }
  }
  // A diagonal stroke so the pattern has no accidental symmetry; direction
  // and thickness vary with the seed.
  const bool rising = rng.next() % 2 == 0;
  const std::size_t stroke = 1 + cols / (24 + rng.next() % 32);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t j = rising ? (i * cols) / rows
                                 : cols - 1 - (i * cols) / rows;
    for (std::size_t dj = 0; dj < stroke; ++dj) {
      if (j + dj < cols) out(i, j + dj) = 230.0;
    }
  }
  // Dither keeps the singular values distinct.
  for (double& v : out.data()) {
    v = std::clamp(v + (-2.5 + 5.0 * rng.uniform01()), 0.0, 255.0);
  }
  return out;
}

}  // namespace wmark::synth
