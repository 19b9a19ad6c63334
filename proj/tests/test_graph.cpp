#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wblsense/graph.hpp"
#include "wblsense/rng.hpp"

using namespace wblsense;

TEST_CASE("cycle graph wires nearest neighbors with odd/even sides") {
  const auto g4 = cycle_graph(4);
  REQUIRE(g4.in_neighbors(0) == std::array<int, 2>{3, 1});
  REQUIRE(g4.in_neighbors(3) == std::array<int, 2>{2, 0});
  REQUIRE(g4.side_of(0) == 2);
  REQUIRE(g4.side_of(1) == 1);
  REQUIRE(g4.side_vertices(1) == std::vector<int>{1, 3});
  REQUIRE(g4.side_vertices(2) == std::vector<int>{0, 2});

  const auto g6 = cycle_graph(6);
  for (int v = 0; v < 6; ++v) {
    const auto& nb = g6.in_neighbors(v);
    REQUIRE(g6.side_of(nb[0]) != g6.side_of(v));
    REQUIRE(g6.side_of(nb[1]) != g6.side_of(v));
  }

  REQUIRE_THROWS_AS(cycle_graph(5), std::invalid_argument);
  REQUIRE_THROWS_AS(cycle_graph(2), std::invalid_argument);
}

TEST_CASE("random bipartite graphs have in-degree two from the opposite side") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const auto g = random_bipartite_graph(32, seed);
    REQUIRE(g.num_vertices() == 32);
    REQUIRE(g.side_vertices(1).size() == 16);
    REQUIRE(g.side_vertices(2).size() == 16);
    for (int v = 0; v < 32; ++v) {
      const auto& nb = g.in_neighbors(v);
      REQUIRE(nb[0] != nb[1]);  // without replacement by default
      REQUIRE(g.side_of(nb[0]) != g.side_of(v));
      REQUIRE(g.side_of(nb[1]) != g.side_of(v));
    }
  }
}

TEST_CASE("random graphs are deterministic per seed and vary across seeds") {
  REQUIRE(random_bipartite_graph(64, 5) == random_bipartite_graph(64, 5));
  REQUIRE_FALSE(random_bipartite_graph(64, 5) == random_bipartite_graph(64, 6));
}

TEST_CASE("N=4 forces each vertex to take both opposite vertices") {
  const auto g = random_bipartite_graph(4, 123);
  for (int v = 0; v < 4; ++v) {
    const auto& nb = g.in_neighbors(v);
    const std::set<int> pair{nb[0], nb[1]};
    if (g.side_of(v) == 1)
      REQUIRE(pair == std::set<int>{2, 3});
    else
      REQUIRE(pair == std::set<int>{0, 1});
  }
}

TEST_CASE("split ratio moves the side boundary") {
  const auto g = random_bipartite_graph(16, 7, 0.25);
  REQUIRE(g.side_vertices(1).size() == 4);
  REQUIRE(g.side_vertices(2).size() == 12);
  // a 1-vertex side cannot supply two distinct neighbors
  REQUIRE_THROWS_AS(random_bipartite_graph(8, 7, 0.125), std::invalid_argument);
  // ... unless equal neighbors are allowed
  const auto loose = random_bipartite_graph(8, 7, 0.125, true);
  REQUIRE(loose.side_vertices(1).size() == 1);
}

TEST_CASE("constructor rejects same-side neighbors and bad labels") {
  std::vector<int> side{1, 1, 2, 2};
  REQUIRE_THROWS_AS(
      BipartiteInteractionGraph(4, side, {{{1, 2}}, {{2, 3}}, {{0, 1}}, {{0, 1}}}),
      std::invalid_argument);  // vertex 0 reads side-1 vertex 1
  REQUIRE_THROWS_AS(
      BipartiteInteractionGraph(4, side, {{{2, 2}}, {{2, 3}}, {{0, 1}}, {{0, 1}}}),
      std::invalid_argument);  // equal neighbors rejected by default
  REQUIRE_NOTHROW(
      BipartiteInteractionGraph(4, side, {{{2, 2}}, {{2, 3}}, {{0, 1}}, {{0, 1}}}, true));
  REQUIRE_THROWS_AS(
      BipartiteInteractionGraph(4, {1, 1, 1, 1}, {{{1, 2}}, {{2, 3}}, {{0, 1}}, {{0, 1}}}),
      std::invalid_argument);  // one side empty
}

TEST_CASE("JSON round-trip preserves the graph") {
  const auto g = random_bipartite_graph(24, 11);
  const auto j = graph_to_json(g);
  REQUIRE(j.at("n") == 24);
  REQUIRE(graph_from_json(j) == g);

  const auto c = cycle_graph(8);
  REQUIRE(graph_from_json(graph_to_json(c)) == c);
}
