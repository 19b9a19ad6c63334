// rule54.hpp
// Classical Rule 54 dynamics on bipartite interaction graphs.
//
// The local rule flips a site iff at least one of its two in-neighbors is
// set: x' = x XOR (n1 OR n2) (Wolfram code 54 on the neighborhood). A half
// sweep updates every vertex of one side simultaneously; since reads touch
// only the opposite side, a half sweep is an involution (it XORs a mask
// that does not depend on the updated side). A full step is two half
// sweeps, side 1 first by default.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "wblsense/bitconfig.hpp"
#include "wblsense/graph.hpp"

namespace wblsense {

enum class HalfStepOrder { v1_first, v2_first };

constexpr int rule54_local(int x, int n1, int n2) noexcept { return x ^ (n1 | n2); }

// Word-level kernel: gather each updated vertex's neighbor-OR into a mask,
// then XOR the mask into the configuration in one pass.
inline BitConfiguration half_sweep(const BitConfiguration& c, const BipartiteInteractionGraph& g,
                                   int side) {
  if (c.length() != g.num_vertices())
    throw std::invalid_argument("half_sweep: configuration length " + std::to_string(c.length()) +
                                " != graph size " + std::to_string(g.num_vertices()));
  std::vector<std::uint64_t> mask(c.words().size(), 0);
  for (int v : g.side_vertices(side)) {
    const auto& [n1, n2] = g.in_neighbors(v);
    const bool hot = c.bit(n1) || c.bit(n2);
    if (hot) mask[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  }
  BitConfiguration out = c;
  for (std::size_t w = 0; w < mask.size(); ++w) out.words()[w] ^= mask[w];
  return out;
}

inline BitConfiguration step(const BitConfiguration& c, const BipartiteInteractionGraph& g,
                             HalfStepOrder order = HalfStepOrder::v1_first) {
  const int first = order == HalfStepOrder::v1_first ? 1 : 2;
  const int second = order == HalfStepOrder::v1_first ? 2 : 1;
  return half_sweep(half_sweep(c, g, first), g, second);
}

}  // namespace wblsense
