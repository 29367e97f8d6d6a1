#include "tatn/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tatn/counters.hpp"

namespace tatn {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                " does not equal rows*cols = " +
                                std::to_string(rows * cols));
  }
}

Matrix Matrix::filled(std::size_t rows, std::size_t cols, double value) {
  Matrix m(rows, cols);
  for (double& x : m.data_) x = value;
  return m;
}

double& Matrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at: index out of range");
  return data_[i * cols_ + j];
}

double Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at: index out of range");
  return data_[i * cols_ + j];
}

namespace {

[[noreturn]] void throw_dim_mismatch(const char* op, const Matrix& a, const Matrix& b) {
  throw std::invalid_argument(std::string(op) + ": dimension mismatch: lhs is " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                              ", rhs is " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()));
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b, AccessCounter* counter) {
  if (a.cols() != b.rows()) throw_dim_mismatch("matmul", a, b);
  Matrix out(a.rows(), b.cols());
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  for (std::size_t i = 0; i < m; ++i) {
    auto out_row = out.row(i);
    auto a_row = a.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double aik = a_row[p];
      auto b_row = b.row(p);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
    }
  }
  if (counter) counter->flops += 2ull * m * k * n;
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b, AccessCounter* counter) {
  if (a.cols() != b.cols()) throw_dim_mismatch("matmul_nt", a, b);
  Matrix out(a.rows(), b.rows());
  const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
  for (std::size_t i = 0; i < m; ++i) {
    auto a_row = a.row(i);
    auto out_row = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      auto b_row = b.row(j);
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += a_row[p] * b_row[p];
      out_row[j] = acc;
    }
  }
  if (counter) counter->flops += 2ull * m * k * n;
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

bool has_nan(std::span<const double> values) {
  for (double x : values)
    if (std::isnan(x)) return true;
  return false;
}

bool has_nan(const Matrix& m) { return has_nan(m.data()); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw_dim_mismatch("max_abs_diff", a, b);
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double diff = std::abs(da[i] - db[i]);
    if (diff > worst) worst = diff;
  }
  return worst;
}

}  // namespace tatn
