// graph.hpp
// Bipartite interaction graphs: N vertices split into two sides, every
// vertex holding an ordered pair of in-neighbors from the opposite side.
// The even cycle (odd labels = side 1) is the nearest-neighbor special
// case; random graphs draw each vertex's two in-neighbors uniformly from
// the opposite side.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wblsense/rng.hpp"

namespace wblsense {

class BipartiteInteractionGraph {
 public:
  BipartiteInteractionGraph(int n_vertices, std::vector<int> side,
                            std::vector<std::array<int, 2>> in_neighbors,
                            bool allow_equal_neighbors = false)
      : n_(n_vertices), side_(std::move(side)), in_neighbors_(std::move(in_neighbors)) {
    validate(allow_equal_neighbors);
    for (int v = 0; v < n_; ++v)
      (side_[static_cast<std::size_t>(v)] == 1 ? side1_ : side2_).push_back(v);
  }

  int num_vertices() const { return n_; }
  int side_of(int v) const { return side_.at(static_cast<std::size_t>(v)); }
  const std::array<int, 2>& in_neighbors(int v) const {
    return in_neighbors_.at(static_cast<std::size_t>(v));
  }
  const std::vector<int>& side_vertices(int side) const {
    if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
    return side == 1 ? side1_ : side2_;
  }

  friend bool operator==(const BipartiteInteractionGraph& a, const BipartiteInteractionGraph& b) {
    return a.n_ == b.n_ && a.side_ == b.side_ && a.in_neighbors_ == b.in_neighbors_;
  }

 private:
  void validate(bool allow_equal_neighbors) const {
    if (n_ < 2) throw std::invalid_argument("graph: need at least 2 vertices");
    if (static_cast<int>(side_.size()) != n_ || static_cast<int>(in_neighbors_.size()) != n_)
      throw std::invalid_argument("graph: side/in_neighbors size mismatch");
    int count1 = 0, count2 = 0;
    for (int s : side_) {
      if (s == 1)
        ++count1;
      else if (s == 2)
        ++count2;
      else
        throw std::invalid_argument("graph: side labels must be 1 or 2");
    }
    if (count1 == 0 || count2 == 0) throw std::invalid_argument("graph: both sides must be non-empty");
    for (int v = 0; v < n_; ++v) {
      const auto& [n1, n2] = in_neighbors_[static_cast<std::size_t>(v)];
      if (n1 < 0 || n1 >= n_ || n2 < 0 || n2 >= n_)
        throw std::invalid_argument("graph: in-neighbor index out of range");
      const int opposite = side_[static_cast<std::size_t>(v)] == 1 ? 2 : 1;
      if (side_[static_cast<std::size_t>(n1)] != opposite ||
          side_[static_cast<std::size_t>(n2)] != opposite)
        throw std::invalid_argument("graph: in-neighbors of vertex " + std::to_string(v) +
                                    " must lie on the opposite side");
      if (!allow_equal_neighbors && n1 == n2)
        throw std::invalid_argument("graph: vertex " + std::to_string(v) +
                                    " has equal in-neighbors");
    }
  }

  int n_;
  std::vector<int> side_;
  std::vector<std::array<int, 2>> in_neighbors_;
  std::vector<int> side1_, side2_;
};

// N-cycle with nearest-neighbor interaction: in_neighbors(v) = (v-1, v+1)
// mod N, side 1 = odd labels, side 2 = even labels. N must be even (an odd
// cycle is not bipartite) and at least 4.
inline BipartiteInteractionGraph cycle_graph(int n) {
  if (n < 4) throw std::invalid_argument("cycle_graph: need N >= 4");
  if (n % 2 != 0) throw std::invalid_argument("cycle_graph: odd N breaks bipartiteness");
  std::vector<int> side(static_cast<std::size_t>(n));
  std::vector<std::array<int, 2>> nbrs(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    side[static_cast<std::size_t>(v)] = (v % 2 == 1) ? 1 : 2;
    nbrs[static_cast<std::size_t>(v)] = {(v - 1 + n) % n, (v + 1) % n};
  }
  return BipartiteInteractionGraph(n, std::move(side), std::move(nbrs));
}

// Random bipartite graph: side 1 = vertices [0, m), side 2 = [m, N) with
// m = round(N * split_ratio). Each vertex draws its two in-neighbors from
// the opposite side, without replacement by default. Deterministic per
// seed; vertices are processed in increasing order, two draws each.
// In-degrees are exactly 2 by construction; out-degrees may vary.
inline BipartiteInteractionGraph random_bipartite_graph(int n, std::uint64_t seed,
                                                        double split_ratio = 0.5,
                                                        bool allow_equal_neighbors = false) {
  if (n < 4) throw std::invalid_argument("random_bipartite_graph: need N >= 4");
  if (n % 2 != 0) throw std::invalid_argument("random_bipartite_graph: need even N");
  const int m = static_cast<int>(split_ratio * n + 0.5);
  const int min_side = allow_equal_neighbors ? 1 : 2;
  if (m < min_side || n - m < min_side)
    throw std::invalid_argument(
        "random_bipartite_graph: each side needs at least " + std::to_string(min_side) +
        " vertices to draw two in-neighbors");

  std::vector<int> side(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) side[static_cast<std::size_t>(v)] = v < m ? 1 : 2;

  Xoshiro256StarStar rng(seed);
  std::vector<std::array<int, 2>> nbrs(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const bool on_side1 = v < m;
    const int base = on_side1 ? m : 0;           // opposite side starts here
    const int size = on_side1 ? n - m : m;
    const int i = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(size)));
    int j;
    if (allow_equal_neighbors) {
      j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(size)));
    } else {
      j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(size - 1)));
      if (j >= i) ++j;
    }
    nbrs[static_cast<std::size_t>(v)] = {base + i, base + j};
  }
  return BipartiteInteractionGraph(n, std::move(side), std::move(nbrs), allow_equal_neighbors);
}

// Exchange format: {"n": N, "sides": [...], "in_neighbors": [[n1,n2],...]}.
inline nlohmann::json graph_to_json(const BipartiteInteractionGraph& g) {
  nlohmann::json j;
  j["n"] = g.num_vertices();
  auto& sides = j["sides"] = nlohmann::json::array();
  auto& nbrs = j["in_neighbors"] = nlohmann::json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    sides.push_back(g.side_of(v));
    nbrs.push_back({g.in_neighbors(v)[0], g.in_neighbors(v)[1]});
  }
  return j;
}

inline BipartiteInteractionGraph graph_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<int> side = j.at("sides").get<std::vector<int>>();
  std::vector<std::array<int, 2>> nbrs;
  for (const auto& pair : j.at("in_neighbors")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("graph_from_json: in_neighbors entries must be pairs");
    nbrs.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  // Files may describe with-replacement graphs; structural invariants are
  // still enforced.
  return BipartiteInteractionGraph(n, std::move(side), std::move(nbrs),
                                   /*allow_equal_neighbors=*/true);
}

}  // namespace wblsense
