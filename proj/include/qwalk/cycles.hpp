#pragma once

#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Rooted spanning tree of a connected structure graph.
struct SpanningTree {
  VertexId root = 0;
  std::vector<VertexId> parent;      ///< parent[root] == -1
  std::vector<EdgeId> parent_edge;   ///< edge to parent, -1 at root
  std::vector<int> depth;
  std::vector<char> in_tree;         ///< per edge id
  std::vector<EdgeId> non_tree_edges;  ///< ascending edge id

  int tree_edge_count() const {
    int c = 0;
    for (char b : in_tree) c += b;
    return c;
  }
};

/// Breadth-first spanning tree rooted at vertex 0, visiting neighbors in
/// ascending id order. Throws std::invalid_argument if the graph is
/// disconnected.
SpanningTree spanning_tree(const StructureGraph& g);

/// Variant with a chosen root and optional descending neighbor order; used to
/// exercise basis independence from the tree choice.
SpanningTree spanning_tree(const StructureGraph& g, VertexId root, bool descending_neighbors);

/// Unique tree path between two vertices, as consecutive edge ids from `from`
/// to `to` (empty when from == to).
std::vector<EdgeId> tree_path(const SpanningTree& t, const StructureGraph& g, VertexId from,
                              VertexId to);

enum class Parity { Even, Odd };

/// Cycle closed by restoring one non-tree edge. cycle_edges[i] joins
/// cycle_vertices[i] and cycle_vertices[(i+1) % length]; the walk starts with
/// the recovered edge, entering at its lower-id endpoint.
struct FundamentalCycle {
  EdgeId recovered_edge = -1;
  std::vector<EdgeId> cycle_edges;
  std::vector<VertexId> cycle_vertices;
  Parity parity = Parity::Even;

  int length() const { return static_cast<int>(cycle_edges.size()); }
};

/// One fundamental cycle per non-tree edge, in ascending recovered-edge order.
std::vector<FundamentalCycle> fundamental_cycles(const StructureGraph& g, const SpanningTree& t);

/// Two-colorability check (independent of any cycle computation).
bool is_bipartite(const StructureGraph& g);

}  // namespace qwalk
