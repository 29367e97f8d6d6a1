#pragma once

#include <cstddef>
#include <cstdint>

#include "tatn/matrix.hpp"

namespace tatn {

/// Counter-based dropout generator. The whole saved state is the 64-bit seed;
/// the mask value at (i, j) is a pure function of (seed, i, j), so forward and
/// backward passes regenerate identical masks no matter how their tile loops
/// are ordered.
struct DropoutRng {
  std::uint64_t seed = 0;
};

/// splitmix64 finalizer (Stafford mix13). This exact mixing function is part
/// of the on-disk/reproducibility contract: streams are bit-identical across
/// platforms and runs for a given seed.
std::uint64_t mix64(std::uint64_t z);

/// Uniform draw in [0, 1) at position (i, j): the top 53 bits of
/// mix64(mix64(mix64(seed) ^ (i + 1)) ^ ((j + 1) << 1)) scaled by 2^-53.
double dropout_uniform(DropoutRng rng, std::size_t i, std::size_t j);

/// Dropout scale at (i, j): 1/(1-p) when the draw is >= p (kept, probability
/// 1-p), else 0. p == 0 always returns exactly 1.0. Throws
/// std::invalid_argument unless 0 <= p < 1.
double dropout_scale(DropoutRng rng, std::size_t i, std::size_t j, double p);

/// Materialized mask of dropout_scale values, mainly for tests and replay
/// checks.
Matrix dropout_mask_matrix(DropoutRng rng, std::size_t rows, std::size_t cols,
                           double p);

}  // namespace tatn
