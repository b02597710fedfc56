#include "wmark/metrics.hpp"

#include <cmath>
#include <limits>

#include "wmark/errors.hpp"

namespace wmark {

double mse(const RealMatrix& a, const RealMatrix& b) {
  if (!a.same_shape(b)) throw InvalidInput("mse: shape mismatch");
  if (a.empty()) throw InvalidInput("mse: empty matrices");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double psnr(const RealMatrix& a, const RealMatrix& b, double peak) {
  if (!(peak > 0.0)) throw InvalidInput("psnr: peak must be positive");
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

double normalized_correlation(const RealMatrix& w, const RealMatrix& w_est) {
  if (!w.same_shape(w_est)) {
    throw InvalidInput("normalized_correlation: shape mismatch");
  }
  if (w.empty()) throw InvalidInput("normalized_correlation: empty matrices");
  double ww = 0.0;
  double ee = 0.0;
  double we = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = w.data()[i];
    const double y = w_est.data()[i];
    ww += x * x;
    ee += y * y;
    we += x * y;
  }
  if (ww == 0.0 || ee == 0.0) {
    throw UndefinedCorrelation(
        "normalized_correlation: all-zero input has no direction");
  }
  return we / std::sqrt(ww * ee);
}

}  // namespace wmark
