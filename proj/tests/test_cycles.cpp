#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qwalk/cycles.hpp"
#include "qwalk/families.hpp"

using namespace qwalk;

TEST_CASE("BFS tree of a triangle recovers edge (1,2)") {
  auto g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  SpanningTree t = spanning_tree(g);
  CHECK(t.tree_edge_count() == 2);
  REQUIRE(t.non_tree_edges.size() == 1);
  CHECK(g.edges[t.non_tree_edges[0]] == std::pair{1, 2});

  auto fcs = fundamental_cycles(g, t);
  REQUIRE(fcs.size() == 1);
  CHECK(fcs[0].length() == 3);
  CHECK(fcs[0].parity == Parity::Odd);
}

TEST_CASE("path graph is its own spanning tree") {
  auto g = make_graph(3, {{0, 1}, {1, 2}});
  SpanningTree t = spanning_tree(g);
  CHECK(t.non_tree_edges.empty());
  CHECK(fundamental_cycles(g, t).empty());
}

TEST_CASE("four-cycle has one even fundamental cycle") {
  auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  SpanningTree t = spanning_tree(g);
  CHECK(t.non_tree_edges.size() == 1);
  auto fcs = fundamental_cycles(g, t);
  REQUIRE(fcs.size() == 1);
  CHECK(fcs[0].length() == 4);
  CHECK(fcs[0].parity == Parity::Even);
}

TEST_CASE("cycle walk is consistent") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    StructureGraph g = random_connected_graph(rng);
    SpanningTree t = spanning_tree(g);
    for (const auto& c : fundamental_cycles(g, t)) {
      REQUIRE(c.cycle_vertices.size() == c.cycle_edges.size());
      const int m = c.length();
      for (int i = 0; i < m; ++i) {
        auto [u, v] = g.edges[c.cycle_edges[i]];
        VertexId a = c.cycle_vertices[i], b = c.cycle_vertices[(i + 1) % m];
        CHECK(((u == a && v == b) || (u == b && v == a)));
      }
      // exactly one non-tree edge: the recovered one
      int non_tree = 0;
      for (EdgeId k : c.cycle_edges) non_tree += !t.in_tree[k];
      CHECK(non_tree == 1);
      CHECK(!t.in_tree[c.recovered_edge]);
      CHECK(c.cycle_edges.front() == c.recovered_edge);
    }
  }
}

TEST_CASE("hollow prism cycle count") {
  auto inst = generate({.family = "hollow_prism", .n = 3, .H = 2});
  // 9 vertices, 12 edges -> 4 fundamental cycles regardless of the tree
  CHECK(inst.structure.vertex_count == 9);
  CHECK(inst.structure.edge_count() == 12);
  SpanningTree t = spanning_tree(inst.structure);
  CHECK(fundamental_cycles(inst.structure, t).size() == 4);
}

TEST_CASE("bipartiteness") {
  CHECK(is_bipartite(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})));
  CHECK(!is_bipartite(make_graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  // odd-base hollow prism has an odd cycle on the base
  auto prism = generate({.family = "hollow_prism", .n = 5, .H = 2});
  CHECK(!is_bipartite(prism.structure));
  auto even_prism = generate({.family = "hollow_prism", .n = 4, .H = 2});
  CHECK(is_bipartite(even_prism.structure));
}

TEST_CASE("cycle count and parity properties on random graphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    StructureGraph g = random_connected_graph(rng);
    for (bool desc : {false, true}) {
      SpanningTree t = spanning_tree(g, desc ? g.vertex_count - 1 : 0, desc);
      auto fcs = fundamental_cycles(g, t);
      CHECK(static_cast<int>(fcs.size()) == g.edge_count() - g.vertex_count + 1);
      bool any_odd = false;
      for (const auto& c : fcs) {
        CHECK((c.parity == Parity::Odd) == (c.length() % 2 == 1));
        any_odd = any_odd || c.parity == Parity::Odd;
      }
      CHECK(is_bipartite(g) == !any_odd);
    }
  }
}

TEST_CASE("disconnected input is rejected") {
  auto g = make_graph(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(spanning_tree(g), std::invalid_argument);
}
