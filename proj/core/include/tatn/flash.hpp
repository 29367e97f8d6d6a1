#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tatn/attn_config.hpp"
#include "tatn/block_mask.hpp"
#include "tatn/counters.hpp"
#include "tatn/dropout.hpp"
#include "tatn/matrix.hpp"
#include "tatn/reference.hpp"
#include "tatn/softmax.hpp"
#include "tatn/tile_plan.hpp"

namespace tatn {

/// Everything the tiled forward saves for the backward: the output, the final
/// per-row softmax stats, the dropout generator state, and the plan/config it
/// ran with. No n x n matrix is ever kept.
struct FlashSaved {
  Matrix o;
  SoftmaxStats stats;
  DropoutRng rng;
  TilePlan plan;
  AttnConfig cfg;
};

/// Invoked after each outer (key-block) iteration with the block index and
/// snapshot copies of O, l, m as currently written back to simulated HBM.
using FlashObserver = std::function<void(
    std::size_t j, const Matrix& o, const std::vector<double>& l,
    const std::vector<double>& m)>;

struct FlashOptions {
  FlashObserver observer;
  /// Optional permutation of the outer key-block order; outputs must agree
  /// with the natural order within rounding (the dropout mask is positional,
  /// so this holds with dropout enabled too).
  std::vector<std::size_t> outer_order;
};

/// Tiled attention forward. Streams K/V blocks through simulated SRAM, merges
/// softmax statistics online, and rescales the output block in place. Every
/// HBM transfer is charged to `mem` (see io_predict.hpp for the exact rules);
/// peak residency is recorded and validated against kSramSlackForward * M.
/// Throws on shape/plan mismatch, capacity violation, or NaN in any block
/// (the error names the block indices).
FlashSaved flash_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                         const AttnConfig& cfg, const TilePlan& plan,
                         MemoryModel& mem, const FlashOptions& options = {});

/// Tiled backward with recomputation: each probability block is rebuilt from
/// Q, K and the saved (m, l); the dropout mask is regenerated positionally so
/// it is bit-identical to the forward's. dQ accumulates via read-modify-write
/// per row block; dK, dV accumulate on chip and are written once per key
/// block.
Gradients flash_backward(const FlashSaved& saved, const Matrix& q, const Matrix& k,
                         const Matrix& v, const Matrix& d_o, MemoryModel& mem);

/// Identical to flash_forward except blocks where bmask is false are skipped;
/// K/V blocks are still streamed once per outer iteration. With an all-true
/// mask the outputs and counters are bit-identical to flash_forward.
FlashSaved blocksparse_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                               const AttnConfig& cfg, const TilePlan& plan,
                               const BlockMask& bmask, MemoryModel& mem,
                               const FlashOptions& options = {});

/// Backward counterpart of blocksparse_forward: mirrors flash_backward with
/// skipped blocks. Keys covered by no active block receive exactly zero dK/dV.
Gradients blocksparse_backward(const FlashSaved& saved, const Matrix& q,
                               const Matrix& k, const Matrix& v, const Matrix& d_o,
                               const BlockMask& bmask, MemoryModel& mem);

}  // namespace tatn
