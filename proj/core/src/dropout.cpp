#include "tatn/dropout.hpp"

#include <stdexcept>

namespace tatn {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double dropout_uniform(DropoutRng rng, std::size_t i, std::size_t j) {
  std::uint64_t h = mix64(rng.seed);
  h = mix64(h ^ (static_cast<std::uint64_t>(i) + 1));
  h = mix64(h ^ ((static_cast<std::uint64_t>(j) + 1) << 1));
  // top 53 bits -> [0, 1), exactly representable
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double dropout_scale(DropoutRng rng, std::size_t i, std::size_t j, double p) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("dropout_scale: p must be in [0, 1)");
  const double u = dropout_uniform(rng, i, j);
  return u >= p ? 1.0 / (1.0 - p) : 0.0;
}

Matrix dropout_mask_matrix(DropoutRng rng, std::size_t rows, std::size_t cols,
                           double p) {
  Matrix z(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) z(i, j) = dropout_scale(rng, i, j, p);
  return z;
}

}  // namespace tatn
