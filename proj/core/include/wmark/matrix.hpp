#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wmark {

/// Dense row-major matrix of doubles. The universal carrier for images,
/// subbands and transform coefficients: pixels are nominally in [0, 255],
/// intermediate coefficients are unbounded.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static RealMatrix identity(std::size_t n);
  static RealMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const RealMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  double frobenius_norm() const;
  double sum_squares() const;
  double max_abs() const;

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

RealMatrix transpose(const RealMatrix& a);
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
RealMatrix subtract(const RealMatrix& a, const RealMatrix& b);
RealMatrix scale(const RealMatrix& a, double factor);

/// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);

}  // namespace wmark
