#pragma once

#include <cstddef>
#include <cstdint>

#include "tatn/matrix.hpp"

namespace tatn {

enum class MaskKind { None, Causal, KeyPadding, Custom };

/// Score mask. Masked positions are written as -inf before the softmax.
///   None       - no masking
///   Causal     - key index > query index is masked
///   KeyPadding - key index >= valid_len is masked (padded tail of the keys)
///   Custom     - additive pattern: custom(i, j) is 0 (keep) or -inf (mask)
struct MaskSpec {
  MaskKind kind = MaskKind::None;
  std::size_t valid_len = 0;
  Matrix custom;

  static MaskSpec none() { return {}; }
  static MaskSpec causal() { return {MaskKind::Causal, 0, {}}; }
  static MaskSpec key_padding(std::size_t valid_len) {
    return {MaskKind::KeyPadding, valid_len, {}};
  }
  static MaskSpec custom_additive(Matrix pattern);
};

bool is_masked(const MaskSpec& mask, std::size_t qi, std::size_t kj);

/// Problem description for one attention head.
struct AttnConfig {
  std::size_t n = 0;         // sequence length
  std::size_t d = 0;         // head dimension
  double tau = 1.0;          // softmax scale, typically 1/sqrt(d)
  MaskSpec mask;
  double p_drop = 0.0;       // dropout probability in [0, 1)
  std::uint64_t seed = 0;    // dropout PRNG seed

  /// n, d with the default scale 1/sqrt(d).
  static AttnConfig make(std::size_t n, std::size_t d);

  /// Throws std::invalid_argument when n < 1, d < 1, tau <= 0, p_drop is
  /// outside [0, 1), or a custom mask has the wrong shape or entries other
  /// than 0 and -inf.
  void validate() const;
};

}  // namespace tatn
