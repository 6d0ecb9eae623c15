#include "qwalk/cycles.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace qwalk {

SpanningTree spanning_tree(const StructureGraph& g) { return spanning_tree(g, 0, false); }

SpanningTree spanning_tree(const StructureGraph& g, VertexId root, bool descending_neighbors) {
  if (root < 0 || root >= g.vertex_count) throw std::invalid_argument("spanning_tree: bad root");
  SpanningTree t;
  t.root = root;
  t.parent.assign(g.vertex_count, -1);
  t.parent_edge.assign(g.vertex_count, -1);
  t.depth.assign(g.vertex_count, -1);
  t.in_tree.assign(g.edge_count(), 0);

  auto adj = g.adjacency();
  if (descending_neighbors)
    for (auto& row : adj) std::reverse(row.begin(), row.end());

  std::queue<VertexId> bfs;
  bfs.push(root);
  t.depth[root] = 0;
  int reached = 1;
  while (!bfs.empty()) {
    VertexId u = bfs.front();
    bfs.pop();
    for (auto [w, k] : adj[u])
      if (t.depth[w] < 0) {
        t.depth[w] = t.depth[u] + 1;
        t.parent[w] = u;
        t.parent_edge[w] = k;
        t.in_tree[k] = 1;
        ++reached;
        bfs.push(w);
      }
  }
  if (reached != g.vertex_count)
    throw std::invalid_argument("spanning_tree: graph is disconnected");
  for (EdgeId k = 0; k < g.edge_count(); ++k)
    if (!t.in_tree[k]) t.non_tree_edges.push_back(k);
  return t;
}

std::vector<EdgeId> tree_path(const SpanningTree& t, const StructureGraph& g, VertexId from,
                              VertexId to) {
  (void)g;
  std::vector<EdgeId> up, down;
  VertexId a = from, b = to;
  while (t.depth[a] > t.depth[b]) {
    up.push_back(t.parent_edge[a]);
    a = t.parent[a];
  }
  while (t.depth[b] > t.depth[a]) {
    down.push_back(t.parent_edge[b]);
    b = t.parent[b];
  }
  while (a != b) {
    up.push_back(t.parent_edge[a]);
    a = t.parent[a];
    down.push_back(t.parent_edge[b]);
    b = t.parent[b];
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<FundamentalCycle> fundamental_cycles(const StructureGraph& g, const SpanningTree& t) {
  std::vector<FundamentalCycle> out;
  out.reserve(t.non_tree_edges.size());
  for (EdgeId k : t.non_tree_edges) {
    auto [u, v] = g.edges[k];  // u < v
    FundamentalCycle c;
    c.recovered_edge = k;
    c.cycle_vertices.push_back(v);
    c.cycle_vertices.push_back(u);
    c.cycle_edges.push_back(k);
    VertexId cur = u;
    for (EdgeId pk : tree_path(t, g, u, v)) {
      c.cycle_edges.push_back(pk);
      auto [x, y] = g.edges[pk];
      cur = (x == cur) ? y : x;
      if (cur != v) c.cycle_vertices.push_back(cur);
    }
    c.parity = (c.length() % 2 == 0) ? Parity::Even : Parity::Odd;
    out.push_back(std::move(c));
  }
  return out;
}

bool is_bipartite(const StructureGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> color(g.vertex_count, -1);
  for (VertexId s = 0; s < g.vertex_count; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<VertexId> bfs;
    bfs.push(s);
    while (!bfs.empty()) {
      VertexId u = bfs.front();
      bfs.pop();
      for (auto [w, k] : adj[u]) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          bfs.push(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace qwalk
