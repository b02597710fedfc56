#include <cmath>
#include <vector>

#include "doctest.h"
#include "synth.hpp"
#include "wmark/attacks.hpp"
#include "wmark/bench.hpp"
#include "wmark/errors.hpp"
#include "wmark/metrics.hpp"
#include "wmark/schemes.hpp"

using namespace wmark;

TEST_CASE("attacks: dimensions are always preserved") {
  const RealMatrix image = synth::random_matrix(15, 22, 9001, 0.0, 255.0);
  const std::vector<AttackSpec> grid = default_attack_grid(7);
  for (const AttackSpec& spec : grid) {
    const RealMatrix out = apply_attack(image, spec);
    CAPTURE(attack_label(spec));
    CHECK(out.rows() == image.rows());
    CHECK(out.cols() == image.cols());
  }
}

TEST_CASE("attacks: median of a constant image is the image") {
  const RealMatrix image(9, 11, 42.0);
  const RealMatrix out = apply_attack(image, AttackSpec{MedianParams{3}, 0});
  CHECK(out == image);
}

TEST_CASE("attacks: median on a hand-checked 3x3 neighborhood") {
  const auto image = RealMatrix::from_rows({{1.0, 2.0, 3.0},
                                            {4.0, 5.0, 6.0},
                                            {7.0, 8.0, 100.0}});
  const RealMatrix out = apply_attack(image, AttackSpec{MedianParams{3}, 0});
  // Center window holds all nine values; median is 5.
  CHECK(out(1, 1) == 5.0);
  // Corner (0,0) replicates edges: {1,1,2, 1,1,2, 4,4,5} -> median 2.
  CHECK(out(0, 0) == 2.0);
  // Corner (2,2): {5,6,6, 8,100,100, 8,100,100} -> median 8.
  CHECK(out(2, 2) == 8.0);
}

TEST_CASE("attacks: identity limits") {
  const RealMatrix image = synth::random_matrix(16, 16, 5150, 0.0, 255.0);

  const RealMatrix rot0 = apply_attack(image, AttackSpec{RotationParams{0.0}, 0});
  CHECK(max_abs_diff(rot0, image) < 1e-9);

  const RealMatrix shear0 = apply_attack(image, AttackSpec{ShearParams{0.0}, 0});
  CHECK(max_abs_diff(shear0, image) < 1e-9);

  const RealMatrix noise0 = apply_attack(
      image, AttackSpec{NoiseParams{NoiseModel::kGaussian, 0.0, 0.0}, 3});
  CHECK(max_abs_diff(noise0, image) == 0.0);

  const RealMatrix crop_eps =
      apply_attack(image, AttackSpec{CropParams{1e-9, CropAnchor::kCenter}, 0});
  CHECK(crop_eps == image);
}

TEST_CASE("attacks: center crop zeroes exactly the stated share") {
  const RealMatrix image(512, 512, 255.0);
  const RealMatrix out =
      apply_attack(image, AttackSpec{CropParams{0.25, CropAnchor::kCenter}, 0});
  std::size_t zeros = 0;
  for (double v : out.data()) {
    if (v == 0.0) {
      ++zeros;
    } else {
      CHECK(v == 255.0);
    }
  }
  CHECK(zeros == 512 * 512 / 4);
  // The removed block is centered.
  CHECK(out(128, 128) == 0.0);
  CHECK(out(127, 127) == 255.0);
  CHECK(out(383, 383) == 0.0);
  CHECK(out(384, 384) == 255.0);
}

TEST_CASE("attacks: corner crop anchors at the origin") {
  const RealMatrix image(8, 8, 255.0);
  const RealMatrix out =
      apply_attack(image, AttackSpec{CropParams{0.25, CropAnchor::kCorner}, 0});
  CHECK(out(0, 0) == 0.0);
  CHECK(out(3, 3) == 0.0);
  CHECK(out(4, 4) == 255.0);
  CHECK(out(7, 7) == 255.0);
}

TEST_CASE("attacks: seeded gaussian noise has the contracted moments") {
  const RealMatrix zeros(512, 512, 0.0);
  const double sigma = 5.0;
  const RealMatrix out = apply_attack(
      zeros, AttackSpec{NoiseParams{NoiseModel::kGaussian, sigma, 0.0}, 1234});

  double sum = 0.0;
  for (double v : out.data()) sum += v;
  const double n = static_cast<double>(out.size());
  const double mean = sum / n;
  CHECK(std::abs(mean) <= 3.0 * sigma / std::sqrt(n));

  double var = 0.0;
  for (double v : out.data()) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / n);
  CHECK(stddev == doctest::Approx(sigma).epsilon(0.05));
}

TEST_CASE("attacks: salt-and-pepper hits the stated pixel fraction") {
  const RealMatrix grey(256, 256, 100.0);
  const double density = 0.1;
  const RealMatrix out = apply_attack(
      grey, AttackSpec{NoiseParams{NoiseModel::kSaltPepper, 0.0, density}, 99});
  std::size_t hit = 0;
  for (double v : out.data()) {
    CHECK((v == 0.0 || v == 255.0 || v == 100.0));
    if (v != 100.0) ++hit;
  }
  const double n = static_cast<double>(out.size());
  const double got = static_cast<double>(hit) / n;
  // Binomial fluctuation band.
  CHECK(std::abs(got - density) <= 4.0 * std::sqrt(density * (1 - density) / n));
}

TEST_CASE("attacks: identical spec and seed reproduce identical bytes") {
  const RealMatrix image = synth::random_matrix(33, 27, 808, 0.0, 255.0);
  for (const AttackSpec& spec : default_attack_grid(321)) {
    CAPTURE(attack_label(spec));
    CHECK(apply_attack(image, spec) == apply_attack(image, spec));
  }
}

TEST_CASE("attacks: parameter validation") {
  const RealMatrix image(8, 8, 1.0);
  CHECK_THROWS_AS(apply_attack(image, AttackSpec{MedianParams{2}, 0}), InvalidInput);
  CHECK_THROWS_AS(apply_attack(image, AttackSpec{MedianParams{1}, 0}), InvalidInput);
  CHECK_THROWS_AS(
      apply_attack(image, AttackSpec{NoiseParams{NoiseModel::kGaussian, -1.0, 0.0}, 0}),
      InvalidInput);
  CHECK_THROWS_AS(
      apply_attack(image, AttackSpec{NoiseParams{NoiseModel::kSaltPepper, 0.0, 1.5}, 0}),
      InvalidInput);
  CHECK_THROWS_AS(apply_attack(image, AttackSpec{CropParams{0.0, CropAnchor::kCenter}, 0}),
                  InvalidInput);
  CHECK_THROWS_AS(apply_attack(image, AttackSpec{CropParams{1.0, CropAnchor::kCenter}, 0}),
                  InvalidInput);
}

TEST_CASE("attacks: labels, params and echoes") {
  AttackSpec median{MedianParams{5}, 17};
  CHECK(attack_label(median) == "median");
  CHECK(attack_param_text(median) == "5");
  CHECK(attack_echo(median) == "attack=median window=5 seed=17");

  AttackSpec noise{NoiseParams{NoiseModel::kSaltPepper, 0.0, 0.08}, 3};
  CHECK(attack_label(noise) == "noise-saltpepper");
  CHECK(attack_param_text(noise) == "0.080000");

  AttackSpec crop{CropParams{0.25, CropAnchor::kCorner}, 0};
  CHECK(attack_label(crop) == "crop-corner");
  CHECK(attack_echo(crop) == "attack=crop-corner fraction=0.250000 anchor=corner seed=0");
}

TEST_CASE("attacks: mean NC degrades monotonically along the grids") {
  // Ten hosts, one scheme; mean NC over the corpus must not increase as the
  // attack strength steps up.
  const std::size_t host_size = 128;
  const int corpus = 10;

  struct Grid {
    std::string name;
    std::vector<AttackSpec> specs;
  };
  std::vector<Grid> grids;
  grids.push_back({"noise-sigma",
                   {AttackSpec{NoiseParams{NoiseModel::kGaussian, 2.0, 0.0}, 5},
                    AttackSpec{NoiseParams{NoiseModel::kGaussian, 6.0, 0.0}, 5},
                    AttackSpec{NoiseParams{NoiseModel::kGaussian, 18.0, 0.0}, 5}}});
  grids.push_back({"rotation-angle",
                   {AttackSpec{RotationParams{0.5}, 0},
                    AttackSpec{RotationParams{2.0}, 0},
                    AttackSpec{RotationParams{8.0}, 0}}});
  grids.push_back({"crop-fraction",
                   {AttackSpec{CropParams{0.1, CropAnchor::kCenter}, 0},
                    AttackSpec{CropParams{0.25, CropAnchor::kCenter}, 0},
                    AttackSpec{CropParams{0.5, CropAnchor::kCenter}, 0}}});

  for (const Grid& grid : grids) {
    CAPTURE(grid.name);
    std::vector<double> mean_nc(grid.specs.size(), 0.0);
    for (int img = 0; img < corpus; ++img) {
      const RealMatrix host = synth::synth_host(900 + img, host_size);
      const RealMatrix logo =
          synth::synth_logo(host_size / 2, host_size / 2, 77);
      const RealMatrix wm = condition_watermark(host, logo, 0.0);
      const EmbedResult em = embed_dwt_dct_svd(host, wm);
      for (std::size_t g = 0; g < grid.specs.size(); ++g) {
        const RealMatrix attacked = apply_attack(em.watermarked, grid.specs[g]);
        const ExtractResult ex = extract_dwt_dct_svd(attacked, em.key);
        mean_nc[g] += normalized_correlation(wm, ex.watermark_est) / corpus;
      }
    }
    MESSAGE(grid.name, ": mean NC over strengths = ", mean_nc[0], " ",
            mean_nc[1], " ", mean_nc[2]);
    for (std::size_t g = 1; g < mean_nc.size(); ++g) {
      CHECK(mean_nc[g] <= mean_nc[g - 1] + 1e-9);
    }
  }
}
