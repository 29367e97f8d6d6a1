#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tatn {

struct AccessCounter;

/// Dense row-major matrix of 64-bit reals. Carrier for Q, K, V, O, scores,
/// probabilities and all gradients. -inf entries are legal only inside
/// masked score matrices; NaN is never legal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix filled(std::size_t rows, std::size_t cols, double value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Bounds-checked access; throws std::out_of_range.
  double& at(std::size_t i, std::size_t j);
  double at(std::size_t i, std::size_t j) const;

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Exact (bitwise) equality of shape and every entry.
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Exact dense product a*b. If a counter is given, charges 2*m*k*n FLOPs.
/// Throws std::invalid_argument on dimension mismatch, naming both shapes.
Matrix matmul(const Matrix& a, const Matrix& b, AccessCounter* counter = nullptr);

/// a * b^T without materializing the transpose; same FLOP charge as matmul.
Matrix matmul_nt(const Matrix& a, const Matrix& b, AccessCounter* counter = nullptr);

Matrix transpose(const Matrix& m);

bool has_nan(std::span<const double> values);
bool has_nan(const Matrix& m);

/// max_ij |a - b|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace tatn
