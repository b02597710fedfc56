#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace wmark {

/// Fixed six-decimal rendering used for every numeric value we print.
inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

/// Like fixed6 but renders the infinite-PSNR sentinel as "inf".
inline std::string metric_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fixed6(v);
}

}  // namespace wmark
