#include "qwalk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qwalk {

int StructureGraph::loop_total() const {
  return std::accumulate(loop_counts.begin(), loop_counts.end(), 0);
}

std::vector<std::vector<std::pair<VertexId, EdgeId>>> StructureGraph::adjacency() const {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(vertex_count);
  for (EdgeId k = 0; k < edge_count(); ++k) {
    auto [u, v] = edges[k];
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count || u == v) continue;
    adj[u].emplace_back(v, k);
    adj[v].emplace_back(u, k);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

StructureGraph make_graph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges,
                          const std::map<VertexId, int>& loops) {
  StructureGraph g;
  g.vertex_count = vertex_count;
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  g.edges = std::move(edges);
  g.loop_counts.assign(std::max(vertex_count, 0), 0);
  for (const auto& [v, c] : loops) {
    if (v >= 0 && v < vertex_count)
      g.loop_counts[v] = c;
    else if (c != 0)
      g.loop_counts.push_back(-1);  // forces a BadLoopTable violation downstream
  }
  return g;
}

std::string to_string(const Violation& v) {
  const char* kind = nullptr;
  switch (v.kind) {
    case ViolationKind::ParallelEdge: kind = "parallel edge"; break;
    case ViolationKind::SelfLoopEdge: kind = "self-loop edge"; break;
    case ViolationKind::Disconnected: kind = "disconnected"; break;
    case ViolationKind::DanglingEndpoint: kind = "dangling endpoint"; break;
    case ViolationKind::BadLoopTable: kind = "bad loop table"; break;
  }
  return std::string(kind) + ": " + v.detail;
}

std::vector<Violation> validate(const StructureGraph& g) {
  std::vector<Violation> out;
  if (g.vertex_count <= 0) {
    out.push_back({ViolationKind::Disconnected, "graph has no vertices"});
    return out;
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId k = 0; k < g.edge_count(); ++k) {
    auto [u, v] = g.edges[k];
    std::ostringstream tag;
    tag << "edge " << k << " (" << u << "," << v << ")";
    if (u < 0 || u >= g.vertex_count || v < 0 || v >= g.vertex_count) {
      out.push_back({ViolationKind::DanglingEndpoint, tag.str()});
      continue;
    }
    if (u == v) {
      out.push_back({ViolationKind::SelfLoopEdge, tag.str()});
      continue;
    }
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) out.push_back({ViolationKind::ParallelEdge, tag.str()});
  }
  if (static_cast<int>(g.loop_counts.size()) != g.vertex_count) {
    out.push_back({ViolationKind::BadLoopTable, "loop table size does not match vertex count"});
  } else {
    for (VertexId v = 0; v < g.vertex_count; ++v)
      if (g.loop_counts[v] < 0)
        out.push_back({ViolationKind::BadLoopTable,
                       "negative loop count at vertex " + std::to_string(v)});
  }
  // Connectivity over well-formed edges only.
  auto adj = g.adjacency();
  std::vector<char> vis(g.vertex_count, 0);
  std::queue<VertexId> bfs;
  bfs.push(0);
  vis[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    VertexId u = bfs.front();
    bfs.pop();
    for (auto [w, k] : adj[u])
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        bfs.push(w);
      }
  }
  if (reached != g.vertex_count)
    out.push_back({ViolationKind::Disconnected,
                   std::to_string(g.vertex_count - reached) + " vertices unreachable from 0"});
  return out;
}

bool is_valid(const StructureGraph& g) { return validate(g).empty(); }

StateGraph build_state_graph(const StructureGraph& g) {
  StateGraph sg;
  sg.structure_edge_count = g.edge_count();
  const int n_pairs = 2 * g.edge_count();
  sg.edges.resize(n_pairs + g.loop_total());
  for (EdgeId k = 0; k < g.edge_count(); ++k) {
    auto [u, v] = g.edges[k];
    sg.edges[2 * k] = {2 * k, u, 2 * k + 1, k};
    sg.edges[2 * k + 1] = {2 * k + 1, v, 2 * k, k};
  }
  sg.vertex_loops.assign(g.vertex_count, {});
  DirEdgeId next = n_pairs;
  for (VertexId v = 0; v < g.vertex_count; ++v)
    for (int j = 0; j < g.loops_at(v); ++j) {
      sg.edges[next] = {next, v, next, kLoopSupport};
      sg.vertex_loops[v].push_back(next);
      ++next;
    }
  sg.vertex_subspaces.assign(g.vertex_count, {});
  auto adj = g.adjacency();
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    auto& sub = sg.vertex_subspaces[v];
    for (auto [w, k] : adj[v]) sub.push_back(g.edges[k].first == v ? 2 * k : 2 * k + 1);
    for (DirEdgeId l : sg.vertex_loops[v]) sub.push_back(l);
  }
  return sg;
}

WalkInstance make_instance(StructureGraph g, std::set<VertexId> sinks, InitialSpec initial) {
  std::vector<std::string> problems;
  for (const auto& v : validate(g)) problems.push_back(to_string(v));
  if (!problems.empty()) {
    std::string msg = "invalid structure graph";
    for (const auto& p : problems) msg += "; " + p;
    throw std::invalid_argument(msg);
  }

  WalkInstance inst;
  inst.structure = std::move(g);
  inst.state_graph = build_state_graph(inst.structure);
  for (VertexId s : sinks)
    if (s < 0 || s >= inst.structure.vertex_count)
      throw std::invalid_argument("sink vertex " + std::to_string(s) + " out of range");
  inst.sink_vertices = std::move(sinks);

  if (initial.vertex.has_value() == !initial.edges.empty())
    throw std::invalid_argument("initial subspace must be either a vertex or an edge list");
  if (initial.vertex) {
    VertexId v = *initial.vertex;
    if (v < 0 || v >= inst.structure.vertex_count)
      throw std::invalid_argument("initial vertex " + std::to_string(v) + " out of range");
    if (inst.sink_vertices.count(v))
      throw std::invalid_argument("initial vertex " + std::to_string(v) + " is a sink vertex");
    inst.initial_vertex = v;
    inst.initial_edges = inst.state_graph.vertex_subspaces[v];
  } else {
    std::set<DirEdgeId> uniq;
    for (DirEdgeId e : initial.edges) {
      if (e < 0 || e >= inst.state_graph.dim())
        throw std::invalid_argument("initial edge " + std::to_string(e) + " out of range");
      if (inst.sink_vertices.count(inst.state_graph.origin(e)))
        throw std::invalid_argument("initial edge " + std::to_string(e) +
                                    " originates at a sink vertex");
      uniq.insert(e);
    }
    inst.initial_edges.assign(uniq.begin(), uniq.end());
  }
  if (inst.initial_edges.empty()) throw std::invalid_argument("initial subspace is empty");
  return inst;
}

std::vector<DirEdgeId> sink_subspace(const WalkInstance& inst) {
  std::vector<DirEdgeId> out;
  for (VertexId v : inst.sink_vertices)
    for (DirEdgeId e : inst.state_graph.vertex_subspaces[v]) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qwalk
