#include "tatn/softmax.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tatn {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

StatsRow StatsRow::empty() { return {kNegInf, 0.0}; }

SoftmaxStats::SoftmaxStats(std::size_t n) : m(n, kNegInf), l(n, 0.0) {}

void SoftmaxStats::validate() const {
  if (m.size() != l.size())
    throw std::invalid_argument("SoftmaxStats: m and l lengths differ");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (std::isnan(m[i]) || std::isnan(l[i]))
      throw std::invalid_argument("SoftmaxStats: NaN entry");
    if (l[i] < 0.0) throw std::invalid_argument("SoftmaxStats: negative denominator");
    const bool row_empty = (m[i] == kNegInf);
    if (row_empty != (l[i] == 0.0))
      throw std::invalid_argument("SoftmaxStats: l == 0 must coincide with m == -inf");
  }
}

double exp_shifted(double x, double m) {
  if (m == kNegInf || x == kNegInf) return 0.0;
  return std::exp(x - m);
}

RowSoftmax stable_softmax_row(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("stable_softmax_row: empty input");
  for (double v : x)
    if (std::isnan(v)) throw std::invalid_argument("stable_softmax_row: NaN input");

  double m = kNegInf;
  for (double v : x)
    if (v > m) m = v;

  RowSoftmax out;
  out.probs.assign(x.size(), 0.0);
  if (m == kNegInf) {
    out.stats = StatsRow::empty();
    return out;  // fully-masked row: all-zero probabilities
  }

  double l = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = exp_shifted(x[i], m);
    out.probs[i] = e;
    l += e;
  }
  for (double& p : out.probs) p /= l;
  out.stats = {m, l};
  return out;
}

StatsRow merge_stats(StatsRow a, StatsRow b) {
  const double m = std::max(a.m, b.m);
  if (m == kNegInf) return StatsRow::empty();
  const double l = exp_shifted(a.m, m) * a.l + exp_shifted(b.m, m) * b.l;
  return {m, l};
}

StatsRow merge_stats(StatsRow a, std::span<double> acc, StatsRow b,
                     std::span<const double> contrib) {
  if (acc.size() != contrib.size())
    throw std::invalid_argument("merge_stats: accumulator length mismatch");
  const StatsRow merged = merge_stats(a, b);
  if (merged.l == 0.0) {
    for (double& x : acc) x = 0.0;
    return merged;
  }
  const double scale_a = a.l * exp_shifted(a.m, merged.m);
  const double scale_b = exp_shifted(b.m, merged.m);
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] = (scale_a * acc[i] + scale_b * contrib[i]) / merged.l;
  return merged;
}

}  // namespace tatn
