#include "tatn/reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tatn/dropout.hpp"

namespace tatn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_inputs(const char* op, const Matrix& q, const Matrix& k, const Matrix& v,
                  const AttnConfig& cfg) {
  cfg.validate();
  if (q.rows() != cfg.n || q.cols() != cfg.d)
    throw std::invalid_argument(std::string(op) + ": Q must be n x d per config");
  if (k.cols() != cfg.d || v.cols() != cfg.d)
    throw std::invalid_argument(std::string(op) + ": K and V must have d columns");
  if (k.rows() != v.rows())
    throw std::invalid_argument(std::string(op) + ": K and V row counts differ");
  if (k.rows() > cfg.n)
    throw std::invalid_argument(std::string(op) + ": more keys than the configured n");
  if (has_nan(q) || has_nan(k) || has_nan(v))
    throw std::invalid_argument(std::string(op) + ": NaN input");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

ForwardArtifacts standard_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                                  const AttnConfig& cfg, AccessCounter* counter) {
  check_inputs("standard_forward", q, k, v, cfg);
  const std::size_t n = q.rows(), d = q.cols(), nk = k.rows();
  const DropoutRng rng{cfg.seed};

  ForwardArtifacts art;

  // S = tau*Q*K^T with the mask folded in as -inf writes.
  if (counter) counter->hbm_read_elems += n * d + nk * d;
  art.s = Matrix(n, nk);
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = q.row(i);
    auto srow = art.s.row(i);
    for (std::size_t j = 0; j < nk; ++j)
      srow[j] = is_masked(cfg.mask, i, j) ? kNegInf : cfg.tau * dot(qi, k.row(j));
  }
  if (counter) {
    counter->hbm_write_elems += n * nk;
    counter->flops += 2ull * n * d * nk + static_cast<std::uint64_t>(n) * nk;
  }

  // Row softmax, charged as a streaming three-pass read of S.
  art.p = Matrix(n, nk);
  art.stats = SoftmaxStats(n);
  for (std::size_t i = 0; i < n; ++i) {
    RowSoftmax row = stable_softmax_row(art.s.row(i));
    auto prow = art.p.row(i);
    for (std::size_t j = 0; j < nk; ++j) prow[j] = row.probs[j];
    art.stats.m[i] = row.stats.m;
    art.stats.l[i] = row.stats.l;
  }
  if (counter) {
    counter->hbm_read_elems += 3ull * n * nk;
    counter->hbm_write_elems += n * nk;
    counter->flops += 4ull * n * nk;
  }

  // Dropout (always applied; the p = 0 scale is exactly 1.0), then O = P'V.
  art.p_dropped = art.p;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = art.p_dropped.row(i);
    for (std::size_t j = 0; j < nk; ++j)
      row[j] *= dropout_scale(rng, i, j, cfg.p_drop);
  }
  art.o = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto prow = art.p_dropped.row(i);
    auto orow = art.o.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double pij = prow[j];
      auto vrow = v.row(j);
      for (std::size_t x = 0; x < d; ++x) orow[x] += pij * vrow[x];
    }
  }
  if (counter) {
    counter->hbm_read_elems += static_cast<std::uint64_t>(n) * nk + nk * d;
    counter->hbm_write_elems += n * d;
    counter->flops += 2ull * n * nk * d;
  }
  return art;
}

Gradients standard_backward(const ForwardArtifacts& artifacts, const Matrix& q,
                            const Matrix& k, const Matrix& v, const Matrix& d_o,
                            const AttnConfig& cfg, AccessCounter* counter) {
  check_inputs("standard_backward", q, k, v, cfg);
  const std::size_t n = q.rows(), d = q.cols(), nk = k.rows();
  if (!d_o.same_shape(q))
    throw std::invalid_argument("standard_backward: dO must match Q's shape");
  if (artifacts.p.rows() != n || artifacts.p.cols() != nk)
    throw std::invalid_argument("standard_backward: artifacts do not match inputs");
  if (has_nan(d_o)) throw std::invalid_argument("standard_backward: NaN input");
  const DropoutRng rng{cfg.seed};

  Gradients g;

  // dV = P_dropped^T dO
  if (counter) counter->hbm_read_elems += static_cast<std::uint64_t>(n) * nk + n * d;
  g.dv = Matrix(nk, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto prow = artifacts.p_dropped.row(i);
    auto dorow = d_o.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double pij = prow[j];
      auto dvrow = g.dv.row(j);
      for (std::size_t x = 0; x < d; ++x) dvrow[x] += pij * dorow[x];
    }
  }
  if (counter) {
    counter->hbm_write_elems += nk * d;
    counter->flops += 2ull * n * nk * d;
  }

  // dP = (dO V^T) routed back through the dropout mask.
  if (counter) counter->hbm_read_elems += static_cast<std::uint64_t>(n + nk) * d;
  Matrix dp(n, nk);
  for (std::size_t i = 0; i < n; ++i) {
    auto dorow = d_o.row(i);
    auto dprow = dp.row(i);
    for (std::size_t j = 0; j < nk; ++j)
      dprow[j] = dot(dorow, v.row(j)) * dropout_scale(rng, i, j, cfg.p_drop);
  }
  if (counter) {
    counter->hbm_write_elems += static_cast<std::uint64_t>(n) * nk;
    counter->flops += 2ull * n * nk * d;
  }

  // dS_ij = P_ij (dP_ij - D_i): one pass reduces D, a second emits dS.
  if (counter) counter->hbm_read_elems += 4ull * n * nk;
  Matrix ds(n, nk);
  for (std::size_t i = 0; i < n; ++i) {
    auto prow = artifacts.p.row(i);
    auto dprow = dp.row(i);
    double di = 0.0;
    for (std::size_t j = 0; j < nk; ++j) di += prow[j] * dprow[j];
    auto dsrow = ds.row(i);
    for (std::size_t j = 0; j < nk; ++j) dsrow[j] = prow[j] * (dprow[j] - di);
  }
  if (counter) {
    counter->hbm_write_elems += static_cast<std::uint64_t>(n) * nk;
    counter->flops += 4ull * n * nk;
  }

  // dQ = tau dS K
  if (counter)
    counter->hbm_read_elems += static_cast<std::uint64_t>(n) * nk + nk * d;
  g.dq = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto dsrow = ds.row(i);
    auto dqrow = g.dq.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double c = dsrow[j];
      auto krow = k.row(j);
      for (std::size_t x = 0; x < d; ++x) dqrow[x] += c * krow[x];
    }
    for (std::size_t x = 0; x < d; ++x) dqrow[x] *= cfg.tau;
  }
  if (counter) {
    counter->hbm_write_elems += n * d;
    counter->flops += 2ull * n * nk * d + n * d;
  }

  // dK = tau dS^T Q
  if (counter)
    counter->hbm_read_elems += static_cast<std::uint64_t>(n) * nk + n * d;
  g.dk = Matrix(nk, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto dsrow = ds.row(i);
    auto qrow = q.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double c = dsrow[j];
      auto dkrow = g.dk.row(j);
      for (std::size_t x = 0; x < d; ++x) dkrow[x] += c * qrow[x];
    }
  }
  for (std::size_t j = 0; j < nk; ++j) {
    auto dkrow = g.dk.row(j);
    for (std::size_t x = 0; x < d; ++x) dkrow[x] *= cfg.tau;
  }
  if (counter) {
    counter->hbm_write_elems += nk * d;
    counter->flops += 2ull * n * nk * d + nk * d;
  }
  return g;
}

MemEffForward memeff_forward(const Matrix& q, const Matrix& k, const Matrix& v,
                             const AttnConfig& cfg, AuxTracker* aux) {
  check_inputs("memeff_forward", q, k, v, cfg);
  if (cfg.p_drop != 0.0)
    throw std::invalid_argument("memeff_forward: dropout is not supported here");
  const std::size_t n = q.rows(), d = q.cols(), nk = k.rows();

  MemEffForward out;
  out.o = Matrix(n, d);
  out.stats = SoftmaxStats(n);

  if (aux) aux->alloc(d);  // one row accumulator
  std::vector<double> acc(d);
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = q.row(i);
    // pass 1: row max
    double m = kNegInf;
    for (std::size_t j = 0; j < nk; ++j) {
      if (is_masked(cfg.mask, i, j)) continue;
      const double s = cfg.tau * dot(qi, k.row(j));
      if (s > m) m = s;
    }
    // pass 2: shifted denominator and weighted sum
    double l = 0.0;
    std::fill(acc.begin(), acc.end(), 0.0);
    if (m != kNegInf) {
      for (std::size_t j = 0; j < nk; ++j) {
        if (is_masked(cfg.mask, i, j)) continue;
        const double e = std::exp(cfg.tau * dot(qi, k.row(j)) - m);
        l += e;
        auto vrow = v.row(j);
        for (std::size_t x = 0; x < d; ++x) acc[x] += e * vrow[x];
      }
    }
    out.stats.m[i] = m;
    out.stats.l[i] = l;
    auto orow = out.o.row(i);
    if (l > 0.0)
      for (std::size_t x = 0; x < d; ++x) orow[x] = acc[x] / l;
  }
  if (aux) aux->free(d);
  return out;
}

Gradients memeff_backward(const Matrix& q, const Matrix& k, const Matrix& v,
                          const Matrix& o, const Matrix& d_o,
                          const SoftmaxStats& stats, const AttnConfig& cfg,
                          AuxTracker* aux) {
  check_inputs("memeff_backward", q, k, v, cfg);
  if (cfg.p_drop != 0.0)
    throw std::invalid_argument("memeff_backward: dropout is not supported here");
  const std::size_t n = q.rows(), d = q.cols(), nk = k.rows();
  if (!o.same_shape(q) || !d_o.same_shape(q))
    throw std::invalid_argument("memeff_backward: O and dO must match Q's shape");
  if (stats.size() != n)
    throw std::invalid_argument("memeff_backward: stats length mismatch");
  if (has_nan(o) || has_nan(d_o))
    throw std::invalid_argument("memeff_backward: NaN input");

  const auto prob = [&](std::size_t i, std::size_t j, std::span<const double> qi) {
    if (stats.l[i] == 0.0 || is_masked(cfg.mask, i, j)) return 0.0;
    return std::exp(cfg.tau * dot(qi, k.row(j)) - stats.m[i]) / stats.l[i];
  };

  Gradients g;
  g.dq = Matrix(n, d);
  g.dk = Matrix(nk, d);
  g.dv = Matrix(nk, d);

  // dv_j = sum_i P_ij dO_i, recomputing P on the fly.
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = q.row(i);
    auto dorow = d_o.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double pij = prob(i, j, qi);
      if (pij == 0.0) continue;
      auto dvrow = g.dv.row(j);
      for (std::size_t x = 0; x < d; ++x) dvrow[x] += pij * dorow[x];
    }
  }

  // D_i = dO_i . O_i, a d-length dot product.
  if (aux) aux->alloc(n);
  std::vector<double> big_d(n);
  for (std::size_t i = 0; i < n; ++i) big_d[i] = dot(d_o.row(i), o.row(i));

  // dq_i = tau sum_j P_ij (dP_ij - D_i) k_j with dP_ij = dO_i . v_j
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = q.row(i);
    auto dorow = d_o.row(i);
    auto dqrow = g.dq.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double pij = prob(i, j, qi);
      if (pij == 0.0) continue;
      const double c = pij * (dot(dorow, v.row(j)) - big_d[i]);
      auto krow = k.row(j);
      for (std::size_t x = 0; x < d; ++x) dqrow[x] += c * krow[x];
    }
    for (std::size_t x = 0; x < d; ++x) dqrow[x] *= cfg.tau;
  }

  // dk_j = tau sum_i P_ij (dP_ij - D_i) q_i
  for (std::size_t i = 0; i < n; ++i) {
    auto qi = q.row(i);
    auto dorow = d_o.row(i);
    for (std::size_t j = 0; j < nk; ++j) {
      const double pij = prob(i, j, qi);
      if (pij == 0.0) continue;
      const double c = pij * (dot(dorow, v.row(j)) - big_d[i]);
      auto dkrow = g.dk.row(j);
      for (std::size_t x = 0; x < d; ++x) dkrow[x] += c * qi[x];
    }
  }
  for (std::size_t j = 0; j < nk; ++j) {
    auto dkrow = g.dk.row(j);
    for (std::size_t x = 0; x < d; ++x) dkrow[x] *= cfg.tau;
  }

  if (aux) aux->free(n);
  return g;
}

}  // namespace tatn
