#pragma once

// Gray-code walk over complement-identified 2-cuts. Internal to the library.

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "ebench/graph.hpp"

namespace ebench::detail {

/// Side mask of configuration `index`: bit v set iff vertex v is on side 1.
/// Vertex 0 is pinned to side 0, so index bit j drives vertex j + 1.
inline std::uint64_t gray_mask(std::uint64_t index) { return (index ^ (index >> 1)) << 1; }

inline int cut_of_mask(const Graph& g, std::uint64_t side) {
  int cut = 0;
  for (int v = 0; v < g.n(); ++v)
    if (side >> v & 1) cut += std::popcount(g.mask(v) & ~side);
  return cut;
}

/// Calls visit(index, side_mask, cut) for every index in [begin, end).
/// visit returns false to stop early. Every 2^16 steps the incremental cut is
/// recomputed from scratch and compared.
template <class Visit>
void gray_walk(const Graph& g, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  if (begin >= end) return;
  std::uint64_t side = gray_mask(begin);
  int cut = cut_of_mask(g, side);
  if (!visit(begin, side, cut)) return;
  for (std::uint64_t i = begin + 1; i < end; ++i) {
    const int v = std::countr_zero(i) + 1;
    const std::uint64_t bit = std::uint64_t{1} << v;
    const std::uint64_t nb = g.mask(v);
    const int crossing = std::popcount(nb & ((side & bit) ? ~side : side));
    cut += std::popcount(nb) - 2 * crossing;
    side ^= bit;
    if ((i & 0xFFFF) == 0 && cut != cut_of_mask(g, side))
      throw std::logic_error("gray walk: incremental cut diverged from recount");
    if (!visit(i, side, cut)) return;
  }
}

}  // namespace ebench::detail
