#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tatn {

/// Running softmax statistics for one row: m is the running max (-inf for an
/// empty or fully-masked row), l the running denominator sum(exp(x - m)).
/// Invariant: l == 0 if and only if m == -inf; l >= 0 always.
struct StatsRow {
  double m;  // -inf marks the empty row
  double l;  // 0 marks the empty row

  static StatsRow empty();
};

/// Per-row (m, l) pairs for a whole matrix of scores.
struct SoftmaxStats {
  std::vector<double> m;
  std::vector<double> l;

  SoftmaxStats() = default;
  explicit SoftmaxStats(std::size_t n);

  std::size_t size() const { return m.size(); }
  StatsRow row(std::size_t i) const { return {m[i], l[i]}; }

  /// Throws std::invalid_argument if the (m, l) invariants are violated.
  void validate() const;
};

/// exp(x - m) with the fully-masked row guarded: returns 0 when m == -inf
/// (which forces x == -inf too), so exp(-inf - -inf) never produces NaN.
double exp_shifted(double x, double m);

struct RowSoftmax {
  std::vector<double> probs;
  StatsRow stats;
};

/// Numerically stable softmax of one row. Entries may be -inf (masked).
/// All--inf rows yield all-zero probs with (m = -inf, l = 0). NaN input is
/// an error.
RowSoftmax stable_softmax_row(std::span<const double> x);

/// Statistics of the concatenation of two score blocks:
///   m = max(a.m, b.m),  l = exp(a.m - m)*a.l + exp(b.m - m)*b.l.
/// Merging with the empty row (m = -inf, l = 0) is the identity.
StatsRow merge_stats(StatsRow a, StatsRow b);

/// Merge that also folds a weighted accumulator. `acc` holds the running
/// output row normalized by a.l; `contrib` holds the fresh block contribution
/// shifted by b.m but not yet normalized. On return `acc` is normalized by
/// the merged denominator and the merged stats are returned. A merged
/// denominator of zero leaves `acc` all-zero.
StatsRow merge_stats(StatsRow a, std::span<double> acc, StatsRow b,
                     std::span<const double> contrib);

}  // namespace tatn
