#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tatn/attn_config.hpp"
#include "tatn/matrix.hpp"

namespace tatn {

/// Boolean tr x tc grid over (query-block, key-block) pairs; true marks a
/// block that is computed, false a block that is skipped entirely.
struct BlockMask {
  std::size_t tr = 0;
  std::size_t tc = 0;
  std::size_t br = 0;
  std::size_t bc = 0;
  std::vector<std::uint8_t> grid;  // row-major tr x tc
  double density = 0.0;            // fraction of true blocks

  bool at(std::size_t i, std::size_t j) const { return grid[i * tc + j] != 0; }
  std::size_t count_true() const;
};

/// Exactly round(s * tr * tc) blocks chosen uniformly without replacement.
BlockMask make_block_mask_random(double s, std::uint64_t seed, std::size_t tr,
                                 std::size_t tc, std::size_t br, std::size_t bc);

/// Fixed butterfly pattern: block (i, j) is true iff i == j or i xor j is a
/// power of two.
BlockMask make_block_mask_butterfly(std::size_t tr, std::size_t tc, std::size_t br,
                                    std::size_t bc);

/// Sliding window of `window` blocks around the diagonal plus `globals`
/// leading global rows and columns: true iff |i - j| <= window or
/// i < globals or j < globals.
BlockMask make_block_mask_local_global(std::size_t window, std::size_t globals,
                                       std::size_t tr, std::size_t tc,
                                       std::size_t br, std::size_t bc);

/// Expand the block grid to an n x n additive element mask (0 keep, -inf
/// masked) and intersect it with `base`; the result reproduces exactly what
/// the block-sparse engines compute.
MaskSpec compose_block_mask(const MaskSpec& base, const BlockMask& bmask,
                            std::size_t n);

}  // namespace tatn
