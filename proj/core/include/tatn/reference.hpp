#pragma once

#include <cstddef>

#include "tatn/attn_config.hpp"
#include "tatn/counters.hpp"
#include "tatn/matrix.hpp"
#include "tatn/softmax.hpp"

namespace tatn {

/// Everything the materialized reference forward produces. s is the scaled,
/// masked score matrix; p the row-softmax of s (pre-dropout); p_dropped is p
/// with the dropout scale applied entrywise.
struct ForwardArtifacts {
  Matrix o;          // n x d
  Matrix s;          // n x n_k, post-scale post-mask
  Matrix p;          // n x n_k, rows sum to 1 (or 0 when fully masked)
  Matrix p_dropped;  // n x n_k
  SoftmaxStats stats;
};

struct Gradients {
  Matrix dq;
  Matrix dk;
  Matrix dv;
};

/// Auxiliary-memory ledger for the streaming reference paths. Tracks only
/// scratch allocations beyond inputs and outputs.
struct AuxTracker {
  std::size_t current = 0;
  std::size_t peak = 0;

  void alloc(std::size_t elems) {
    current += elems;
    if (current > peak) peak = current;
  }
  void free(std::size_t elems) { current -= elems; }
};

/// Materialized reference: S = tau*Q*K^T, mask, row softmax, dropout, O = P'V.
/// K and V may have fewer rows than Q (a key prefix); masks and dropout are
/// evaluated at global (query, key) positions either way. If a counter is
/// given it is charged per the documented standard-attention pattern (see
/// io_predict.hpp).
ForwardArtifacts standard_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                                  const AttnConfig& cfg,
                                  AccessCounter* counter = nullptr);

/// Materialized reference backward:
///   dV = P_dropped^T dO, dP routed back through the dropout mask,
///   dS_ij = P_ij (dP_ij - D_i) with D_i = sum_l P_il dP_il,
///   dQ = tau dS K, dK = tau dS^T Q.
Gradients standard_backward(const ForwardArtifacts& artifacts, const Matrix& q,
                            const Matrix& k, const Matrix& v, const Matrix& d_o,
                            const AttnConfig& cfg, AccessCounter* counter = nullptr);

struct MemEffForward {
  Matrix o;
  SoftmaxStats stats;  // per-row max plus shifted denominator
};

/// Streaming forward: per query row, two passes over the keys with O(1) row
/// state (max pass, then accumulate). No dropout on this path; masking via
/// -inf scores is supported. Equals standard_forward within 1e-10.
MemEffForward memeff_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                             const AttnConfig& cfg, AuxTracker* aux = nullptr);

/// Streaming backward over recomputed probabilities. D_i is always the
/// d-length dot product dO_i . O_i, never an n-length reduction. Auxiliary
/// state is O(n + d): the D vector plus one row accumulator.
Gradients memeff_backward(const Matrix& q, const Matrix& k, const Matrix& v,
                          const Matrix& o, const Matrix& d_o,
                          const SoftmaxStats& stats, const AttnConfig& cfg,
                          AuxTracker* aux = nullptr);

}  // namespace tatn
