#include "wmark/matrix.hpp"

#include <cmath>
#include <utility>

#include "wmark/errors.hpp"

namespace wmark {

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw InvalidInput("matrix dimensions must be positive");
  }
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw InvalidInput("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw InvalidInput("matrix data length does not match rows x cols");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw InvalidInput("matrix initializer rows have unequal lengths");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return RealMatrix(r, c, std::move(data));
}

bool RealMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double RealMatrix::sum_squares() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return acc;
}

double RealMatrix::frobenius_norm() const { return std::sqrt(sum_squares()); }

double RealMatrix::max_abs() const {
  double acc = 0.0;
  for (double v : data_) acc = std::max(acc, std::abs(v));
  return acc;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = a(i, j);
    }
  }
  return out;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidInput("matrix product dimension mismatch");
  }
  RealMatrix out(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

RealMatrix subtract(const RealMatrix& a, const RealMatrix& b) {
  if (!a.same_shape(b)) {
    throw InvalidInput("matrix subtraction shape mismatch");
  }
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.data()[i] = a.data()[i] - b.data()[i];
  }
  return out;
}

RealMatrix scale(const RealMatrix& a, double factor) {
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.data()[i] = a.data()[i] * factor;
  }
  return out;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  if (!a.same_shape(b)) {
    throw InvalidInput("matrix comparison shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = std::max(acc, std::abs(a.data()[i] - b.data()[i]));
  }
  return acc;
}

}  // namespace wmark
