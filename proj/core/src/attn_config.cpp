#include "tatn/attn_config.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tatn {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

MaskSpec MaskSpec::custom_additive(Matrix pattern) {
  MaskSpec spec;
  spec.kind = MaskKind::Custom;
  spec.custom = std::move(pattern);
  return spec;
}

bool is_masked(const MaskSpec& mask, std::size_t qi, std::size_t kj) {
  switch (mask.kind) {
    case MaskKind::None:
      return false;
    case MaskKind::Causal:
      return kj > qi;
    case MaskKind::KeyPadding:
      return kj >= mask.valid_len;
    case MaskKind::Custom:
      return mask.custom(qi, kj) == kNegInf;
  }
  return false;
}

AttnConfig AttnConfig::make(std::size_t n, std::size_t d) {
  AttnConfig cfg;
  cfg.n = n;
  cfg.d = d;
  cfg.tau = 1.0 / std::sqrt(static_cast<double>(d));
  return cfg;
}

void AttnConfig::validate() const {
  if (n < 1) throw std::invalid_argument("AttnConfig: n must be >= 1");
  if (d < 1) throw std::invalid_argument("AttnConfig: d must be >= 1");
  if (!(tau > 0.0) || std::isnan(tau) || std::isinf(tau))
    throw std::invalid_argument("AttnConfig: tau must be finite and > 0");
  if (!(p_drop >= 0.0 && p_drop < 1.0))
    throw std::invalid_argument("AttnConfig: p_drop must be in [0, 1)");
  if (mask.kind == MaskKind::Custom) {
    if (mask.custom.rows() != n || mask.custom.cols() != n)
      throw std::invalid_argument("AttnConfig: custom mask must be n x n");
    for (double x : mask.custom.data()) {
      if (!(x == 0.0 || x == kNegInf))
        throw std::invalid_argument(
            "AttnConfig: custom mask entries must be 0 or -inf");
    }
  }
}

}  // namespace tatn
