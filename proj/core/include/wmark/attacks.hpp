#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wmark/matrix.hpp"

namespace wmark {

enum class AttackKind {
  kMedian,
  kNoise,
  kRotation,
  kShear,
  kCrop,
};

enum class NoiseModel {
  kGaussian,
  kSaltPepper,
};

enum class CropAnchor {
  kCenter,
  kCorner,
};

struct MedianParams {
  int window = 3;  // odd, >= 3
};

struct NoiseParams {
  NoiseModel model = NoiseModel::kGaussian;
  double sigma = 5.0;     // gaussian std dev on the 0-255 scale
  double density = 0.05;  // salt-and-pepper pixel fraction in [0, 1]
};

struct RotationParams {
  double angle_deg = 2.0;
};

struct ShearParams {
  double factor = 0.05;  // horizontal shear about the image center
};

struct CropParams {
  double fraction = 0.25;  // removed-area fraction in (0, 1)
  CropAnchor anchor = CropAnchor::kCenter;
};

/// One attack instance. `seed` drives the stochastic kinds and is echoed in
/// reports so runs are reproducible.
struct AttackSpec {
  std::variant<MedianParams, NoiseParams, RotationParams, ShearParams,
               CropParams>
      params = MedianParams{};
  std::uint64_t seed = 0;

  AttackKind kind() const;
};

/// Applies the attack; output always has the input's dimensions (geometric
/// attacks zero-fill vacated regions). Throws InvalidInput on bad parameters.
RealMatrix apply_attack(const RealMatrix& image, const AttackSpec& spec);

/// Canonical label for report columns: "median", "noise-gaussian",
/// "noise-saltpepper", "rotation", "shear", "crop-center", "crop-corner".
std::string attack_label(const AttackSpec& spec);

/// The defining numeric parameter as printed in report columns.
std::string attack_param_text(const AttackSpec& spec);

/// Full resolved echo, e.g. "attack=median window=3 seed=0".
std::string attack_echo(const AttackSpec& spec);

/// True for kinds whose output depends on the seed.
bool attack_is_stochastic(const AttackSpec& spec);

/// The benchmark grid's center point: median 3, gaussian sigma 5,
/// rotation 2 degrees, shear 0.05, center crop 0.25.
std::vector<AttackSpec> default_attack_grid(std::uint64_t seed);

}  // namespace wmark
