#pragma once

#include <cstddef>
#include <optional>

namespace tatn {

/// SRAM slack factors. The default block-size formula packs the forward inner
/// iteration (K/V block, Q/O block, one score buffer, six stat vectors) into
/// slightly more than M elements, so the forward working set is validated
/// against 1.5*M. The backward holds twice the block buffers (K, V, dK, dV,
/// Q, O, dO, dQ plus two score buffers) and is bounded by 3.0*M, which any
/// plan passing the forward check satisfies.
inline constexpr double kSramSlackForward = 1.5;
inline constexpr double kSramSlackBackward = 3.0;

struct TileOverrides {
  std::optional<std::size_t> br;
  std::optional<std::size_t> bc;
};

/// Tiling plan: query rows split into tr blocks of br, keys/values into tc
/// blocks of bc. Defaults: bc = ceil(M/4d), br = min(bc, d), both clamped
/// to n; last blocks may be short when n is not divisible.
struct TilePlan {
  std::size_t bc = 0;
  std::size_t br = 0;
  std::size_t tr = 0;
  std::size_t tc = 0;
  std::size_t m_capacity = 0;
  std::size_t working_set = 0;  // forward inner-iteration residency estimate
};

/// Forward inner-iteration residency: K and V blocks (2*bc*d), Q and O blocks
/// (2*br*d), one shared score buffer (br*bc; exponentials are applied in
/// place), and six per-row stat vectors (6*br).
std::size_t working_set_elems(std::size_t br, std::size_t bc, std::size_t d);

/// Backward inner-iteration residency: 4 key-side and 4 query-side block
/// buffers, two score buffers and three stat vectors.
std::size_t backward_working_set_elems(std::size_t br, std::size_t bc, std::size_t d);

/// Smallest SRAM capacity for which the default plan for (n, d) passes the
/// forward working-set check.
std::size_t min_feasible_m(std::size_t n, std::size_t d);

/// Applies the default block-size formula (or overrides), clamps to n, and
/// validates the working set against kSramSlackForward * m_capacity. Throws
/// std::invalid_argument when m_capacity < 4*d or the working set does not
/// fit, naming the minimum feasible capacity.
TilePlan plan_tiles(std::size_t n, std::size_t d, std::size_t m_capacity,
                    const TileOverrides& overrides = {});

}  // namespace tatn
