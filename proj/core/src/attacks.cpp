#include "wmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmark/errors.hpp"
#include "wmark/format.hpp"
#include "wmark/rng.hpp"

namespace wmark {

namespace {

RealMatrix median_filter(const RealMatrix& in, const MedianParams& p) {
  if (p.window < 3 || p.window % 2 == 0) {
    throw InvalidInput("median attack: window must be odd and >= 3");
  }
  const int half = p.window / 2;
  const int rows = static_cast<int>(in.rows());
  const int cols = static_cast<int>(in.cols());
  RealMatrix out(in.rows(), in.cols());
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(p.window) * p.window);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      window.clear();
      for (int di = -half; di <= half; ++di) {
        const int si = std::clamp(i + di, 0, rows - 1);
        for (int dj = -half; dj <= half; ++dj) {
          const int sj = std::clamp(j + dj, 0, cols - 1);
          window.push_back(in(static_cast<std::size_t>(si),
                              static_cast<std::size_t>(sj)));
        }
      }
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
      std::nth_element(window.begin(), mid, window.end());
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = *mid;
    }
  }
  return out;
}

RealMatrix add_noise(const RealMatrix& in, const NoiseParams& p,
                     std::uint64_t seed) {
  RealMatrix out = in;
  SplitMix64 rng(seed);
  if (p.model == NoiseModel::kGaussian) {
    if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
      throw InvalidInput("noise attack: sigma must be >= 0");
    }
    for (double& v : out.data()) v += p.sigma * rng.gaussian();
  } else {
    if (!(p.density >= 0.0 && p.density <= 1.0)) {
      throw InvalidInput("noise attack: density must be in [0, 1]");
    }
    for (double& v : out.data()) {
      if (rng.uniform01() < p.density) {
        v = rng.uniform01() < 0.5 ? 0.0 : 255.0;
      }
    }
  }
  return out;
}

double bilinear_sample(const RealMatrix& in, double sy, double sx) {
  const double max_y = static_cast<double>(in.rows() - 1);
  const double max_x = static_cast<double>(in.cols() - 1);
  if (sy < 0.0 || sy > max_y || sx < 0.0 || sx > max_x) return 0.0;
  const std::size_t y0 = static_cast<std::size_t>(sy);
  const std::size_t x0 = static_cast<std::size_t>(sx);
  const std::size_t y1 = std::min(y0 + 1, in.rows() - 1);
  const std::size_t x1 = std::min(x0 + 1, in.cols() - 1);
  const double fy = sy - static_cast<double>(y0);
  const double fx = sx - static_cast<double>(x0);
  const double top = in(y0, x0) * (1.0 - fx) + in(y0, x1) * fx;
  const double bot = in(y1, x0) * (1.0 - fx) + in(y1, x1) * fx;
  return top * (1.0 - fy) + bot * fy;
}

RealMatrix rotate_image(const RealMatrix& in, const RotationParams& p) {
  if (!std::isfinite(p.angle_deg)) {
    throw InvalidInput("rotation attack: angle must be finite");
  }
  const double theta = p.angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cy = static_cast<double>(in.rows() - 1) / 2.0;
  const double cx = static_cast<double>(in.cols() - 1) / 2.0;
  RealMatrix out(in.rows(), in.cols());
  for (std::size_t i = 0; i < in.rows(); ++i) {
    const double dy = static_cast<double>(i) - cy;
    for (std::size_t j = 0; j < in.cols(); ++j) {
      const double dx = static_cast<double>(j) - cx;
      // Inverse mapping: rotate the destination offset by -theta.
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      out(i, j) = bilinear_sample(in, sy, sx);
    }
  }
  return out;
}

RealMatrix shear_image(const RealMatrix& in, const ShearParams& p) {
  if (!std::isfinite(p.factor)) {
    throw InvalidInput("shear attack: factor must be finite");
  }
  const double cy = static_cast<double>(in.rows() - 1) / 2.0;
  RealMatrix out(in.rows(), in.cols());
  for (std::size_t i = 0; i < in.rows(); ++i) {
    const double dy = static_cast<double>(i) - cy;
    const double shift = p.factor * dy;
    for (std::size_t j = 0; j < in.cols(); ++j) {
      out(i, j) = bilinear_sample(in, static_cast<double>(i),
                                  static_cast<double>(j) - shift);
    }
  }
  return out;
}

RealMatrix crop_image(const RealMatrix& in, const CropParams& p) {
  if (!(p.fraction > 0.0 && p.fraction < 1.0)) {
    throw InvalidInput("crop attack: fraction must be in (0, 1)");
  }
  // Removed rectangle scales both axes by sqrt(fraction) so its area is the
  // requested share of the canvas; the canvas itself keeps its dimensions.
  const double side = std::sqrt(p.fraction);
  const std::size_t rh = static_cast<std::size_t>(
      std::llround(static_cast<double>(in.rows()) * side));
  const std::size_t cw = static_cast<std::size_t>(
      std::llround(static_cast<double>(in.cols()) * side));
  RealMatrix out = in;
  if (rh == 0 || cw == 0) return out;
  const std::size_t r0 = p.anchor == CropAnchor::kCenter ? (in.rows() - rh) / 2 : 0;
  const std::size_t c0 = p.anchor == CropAnchor::kCenter ? (in.cols() - cw) / 2 : 0;
  for (std::size_t i = r0; i < r0 + rh; ++i) {
    for (std::size_t j = c0; j < c0 + cw; ++j) {
      out(i, j) = 0.0;
    }
  }
  return out;
}

}  // namespace

AttackKind AttackSpec::kind() const {
  return static_cast<AttackKind>(params.index());
}

RealMatrix apply_attack(const RealMatrix& image, const AttackSpec& spec) {
  if (image.empty()) throw InvalidInput("attack: empty image");
  switch (spec.kind()) {
    case AttackKind::kMedian:
      return median_filter(image, std::get<MedianParams>(spec.params));
    case AttackKind::kNoise:
      return add_noise(image, std::get<NoiseParams>(spec.params), spec.seed);
    case AttackKind::kRotation:
      return rotate_image(image, std::get<RotationParams>(spec.params));
    case AttackKind::kShear:
      return shear_image(image, std::get<ShearParams>(spec.params));
    case AttackKind::kCrop:
      return crop_image(image, std::get<CropParams>(spec.params));
  }
  throw InvalidInput("attack: unknown kind");
}

std::string attack_label(const AttackSpec& spec) {
  switch (spec.kind()) {
    case AttackKind::kMedian:
      return "median";
    case AttackKind::kNoise:
      return std::get<NoiseParams>(spec.params).model == NoiseModel::kGaussian
                 ? "noise-gaussian"
                 : "noise-saltpepper";
    case AttackKind::kRotation:
      return "rotation";
    case AttackKind::kShear:
      return "shear";
    case AttackKind::kCrop:
      return std::get<CropParams>(spec.params).anchor == CropAnchor::kCenter
                 ? "crop-center"
                 : "crop-corner";
  }
  return "unknown";
}

std::string attack_param_text(const AttackSpec& spec) {
  switch (spec.kind()) {
    case AttackKind::kMedian:
      return std::to_string(std::get<MedianParams>(spec.params).window);
    case AttackKind::kNoise: {
      const auto& p = std::get<NoiseParams>(spec.params);
      return fixed6(p.model == NoiseModel::kGaussian ? p.sigma : p.density);
    }
    case AttackKind::kRotation:
      return fixed6(std::get<RotationParams>(spec.params).angle_deg);
    case AttackKind::kShear:
      return fixed6(std::get<ShearParams>(spec.params).factor);
    case AttackKind::kCrop:
      return fixed6(std::get<CropParams>(spec.params).fraction);
  }
  return "";
}

std::string attack_echo(const AttackSpec& spec) {
  std::string out = "attack=" + attack_label(spec);
  switch (spec.kind()) {
    case AttackKind::kMedian:
      out += " window=" + std::to_string(std::get<MedianParams>(spec.params).window);
      break;
    case AttackKind::kNoise: {
      const auto& p = std::get<NoiseParams>(spec.params);
      if (p.model == NoiseModel::kGaussian) {
        out += " sigma=" + fixed6(p.sigma);
      } else {
        out += " density=" + fixed6(p.density);
      }
      break;
    }
    case AttackKind::kRotation:
      out += " angle=" + fixed6(std::get<RotationParams>(spec.params).angle_deg);
      break;
    case AttackKind::kShear:
      out += " factor=" + fixed6(std::get<ShearParams>(spec.params).factor);
      break;
    case AttackKind::kCrop: {
      const auto& p = std::get<CropParams>(spec.params);
      out += " fraction=" + fixed6(p.fraction);
      out += p.anchor == CropAnchor::kCenter ? " anchor=center" : " anchor=corner";
      break;
    }
  }
  out += " seed=" + std::to_string(spec.seed);
  return out;
}

bool attack_is_stochastic(const AttackSpec& spec) {
  return spec.kind() == AttackKind::kNoise;
}

std::vector<AttackSpec> default_attack_grid(std::uint64_t seed) {
  std::vector<AttackSpec> grid;
  grid.push_back(AttackSpec{MedianParams{3}, seed});
  grid.push_back(AttackSpec{NoiseParams{NoiseModel::kGaussian, 5.0, 0.05}, seed});
  grid.push_back(AttackSpec{RotationParams{2.0}, seed});
  grid.push_back(AttackSpec{ShearParams{0.05}, seed});
  grid.push_back(AttackSpec{CropParams{0.25, CropAnchor::kCenter}, seed});
  return grid;
}

}  // namespace wmark
