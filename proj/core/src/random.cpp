#include "tatn/random.hpp"

#include <cmath>
#include <numbers>

namespace tatn {

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on 53-bit uniforms; u1 shifted away from 0 for the log.
  const double u1 =
      (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  GaussianSource src(seed);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = src.next();
  return m;
}

std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  GaussianSource src(seed);
  std::vector<double> out(n);
  for (double& x : out) x = src.next();
  return out;
}

}  // namespace tatn
