#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "tatn/matrix.hpp"

namespace tatn {

/// Deterministic N(0,1) samples for harness inputs: mt19937_64 plus a fixed
/// Box-Muller transform (std::normal_distribution is not pinned by the
/// standard, so we avoid it). Same seed, same stream on a given platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);
std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed);

}  // namespace tatn
