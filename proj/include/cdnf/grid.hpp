#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cdnf {

// Dense row-major m x n grid of doubles. Holds field activations, input maps
// and normalized gray frames alike.
class FieldGrid {
 public:
  FieldGrid() = default;
  FieldGrid(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, value) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("FieldGrid: dimensions must be positive");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double* row(std::size_t r) { return values_.data() + r * cols_; }
  const double* row(std::size_t r) const { return values_.data() + r * cols_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const FieldGrid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  void fill(double v) { std::fill(values_.begin(), values_.end(), v); }

  friend bool operator==(const FieldGrid& a, const FieldGrid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

inline void require_same_shape(const FieldGrid& a, const FieldGrid& b, const char* what) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double max_abs(const FieldGrid& g);
double max_abs_diff(const FieldGrid& a, const FieldGrid& b);

}  // namespace cdnf
