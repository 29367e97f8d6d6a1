#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "tatn/counters.hpp"
#include "tatn/tile_plan.hpp"

namespace tatn {

// Charging rules
// ==============
// The simulator counts HBM traffic in elements, not bytes or cache lines.
// Every rule below is exact: for each algorithm the instrumented counter must
// equal the closed form with integer equality. Stat-vector traffic (l, m) is
// included even though it vanishes asymptotically.
//
// Standard attention models a strictly streaming implementation with O(1)
// per-row on-chip state. In particular the row softmax over the HBM-resident
// score matrix takes three read passes (row max, denominator, emit) and one
// write pass, and the backward's dS stage takes one pass to reduce
// D_i = sum_l P_il dP_il and a second pass to emit dS.
//
// standard forward                    reads              writes
//   load Q, K; S = tau*Q*K^T          2nd                n^2
//   softmax over S (3 passes)         3n^2               n^2
//   load P, V; dropout fused; O=P'V   n^2 + nd           nd
//   total                             3nd + 4n^2         2n^2 + nd
//
// standard backward                   reads              writes
//   dV = P'^T dO                      n^2 + nd           nd
//   dP = dO V^T                       2nd                n^2
//   dS (D pass + emit pass)           4n^2               n^2
//   dQ = tau dS K                     n^2 + nd           nd
//   dK = tau dS^T Q                   n^2 + nd           nd
//   total                             7n^2 + 5nd         2n^2 + 3nd
//
// tiled forward                       reads              writes
//   init O, l, m                      -                  nd + 2n
//   K, V once                         2nd                -
//   per outer pass: Q, O, l, m        tc*(2nd + 2n)      tc*(nd + 2n)
//
// tiled backward                      reads              writes
//   init dQ                           -                  nd
//   K, V once                         2nd                -
//   per outer pass: Q, O, dO, dQ,
//     l, m in; dQ out                 tc*(4nd + 2n)      tc*nd
//   dK, dV once                       -                  2nd
//
// block-sparse: the per-pass terms are charged only for visited blocks; the
// one-time K/V/O/init terms are unchanged. The closed forms below assume
// uniform blocks (br | n and bc | n) and an integral visited count
// round(s*tr*tc); the instrumented engines are exact for any shape.
//
// FLOP rules: matmul(m,k,n) costs 2mkn; exp, divide, max-update, add and
// multiply cost 1 per scalar. Masking and dropout are charged as memory
// patterns, not arithmetic (their FLOP cost is zero), which keeps every count
// independent of mask content and dropout probability.
//
//   standard forward   4n^2 d + 5n^2
//   standard backward  8n^2 d + 4n^2 + 2nd
//   tiled forward      4n^2 d + 5n^2 + tc*(2nd + 7n)
//   tiled backward     10n^2 d + 5n^2 + 4 tc nd + 2 tr nd
//   block-sparse       per-block terms scaled to visited blocks
//
// Under these rules the tiled path stops paying for itself at tiny capacities:
// its total traffic exceeds the standard path's once M falls below roughly
// 2d^2 (the per-pass term tc ~ 4nd/M overtakes the quadratic terms).

struct IoPrediction {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::string_view formula_id;

  std::uint64_t total() const { return reads + writes; }
};

IoPrediction predict_standard_forward_io(std::size_t n, std::size_t d);
IoPrediction predict_standard_backward_io(std::size_t n, std::size_t d);
IoPrediction predict_flash_forward_io(std::size_t n, std::size_t d,
                                      const TilePlan& plan);
IoPrediction predict_flash_backward_io(std::size_t n, std::size_t d,
                                       const TilePlan& plan);

/// Forward block-sparse traffic at block density s (uniform blocks). s = 1
/// reproduces predict_flash_forward_io exactly; s = 0 leaves only the K/V and
/// initialization terms.
IoPrediction predict_blocksparse_io(std::size_t n, std::size_t d,
                                    const TilePlan& plan, double s);
IoPrediction predict_blocksparse_backward_io(std::size_t n, std::size_t d,
                                             const TilePlan& plan, double s);

enum class AlgoId {
  StandardForward,
  StandardBackward,
  FlashForward,
  FlashBackward,
  BlockSparseForward,
  BlockSparseBackward,
};

/// Closed-form FLOP count under the rules above. plan may be null for the
/// standard algorithms; density applies to the block-sparse ids only.
std::uint64_t flop_model(AlgoId algo, std::size_t n, std::size_t d,
                         const TilePlan* plan = nullptr, double density = 1.0);

struct ByteReport {
  std::uint64_t read_bytes = 0;
  std::uint64_t write_bytes = 0;

  std::uint64_t total() const { return read_bytes + write_bytes; }
};

/// Element counts scaled to bytes, times an external batch*heads multiplier.
ByteReport byte_report(std::uint64_t read_elems, std::uint64_t write_elems,
                       std::uint32_t element_bytes, std::uint64_t multiplier = 1);
ByteReport byte_report(const AccessCounter& counter, std::uint32_t element_bytes,
                       std::uint64_t multiplier = 1);

}  // namespace tatn
