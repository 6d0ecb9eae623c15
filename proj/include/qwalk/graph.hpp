#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

using VertexId = int;
using EdgeId = int;     ///< index into StructureGraph::edges (undirected)
using DirEdgeId = int;  ///< index into StateGraph::edges (directed)

/// Undirected simple graph plus a count of unpaired self-loops per vertex.
///
/// Vertices are dense integers 0..vertex_count-1 and edge ids follow input
/// order, so every derived object is reproducible across runs.
struct StructureGraph {
  int vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  ///< stored as (min,max)
  std::vector<int> loop_counts;                      ///< size vertex_count

  int edge_count() const { return static_cast<int>(edges.size()); }
  int loop_total() const;
  int loops_at(VertexId v) const { return loop_counts.empty() ? 0 : loop_counts[v]; }
  /// Per-vertex incidences (neighbor, edge id), sorted by neighbor id.
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency() const;
};

/// Builds a structure graph, normalizing edge endpoint order.
StructureGraph make_graph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges,
                          const std::map<VertexId, int>& loops = {});

enum class ViolationKind {
  ParallelEdge,
  SelfLoopEdge,
  Disconnected,
  DanglingEndpoint,
  BadLoopTable,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::string to_string(const Violation& v);

/// Reports every structural violation; an empty result means the graph is valid.
std::vector<Violation> validate(const StructureGraph& g);
bool is_valid(const StructureGraph& g);

inline constexpr EdgeId kLoopSupport = -1;

struct DirectedEdge {
  DirEdgeId id = -1;
  VertexId origin = -1;
  DirEdgeId partner = -1;  ///< involution; equals id for unpaired loops
  EdgeId support = kLoopSupport;
};

/// Directed double cover of a structure graph plus its unpaired loops.
///
/// Directed-edge ids are fixed by the structure graph: undirected edge k
/// (u,v) with u < v yields id 2k for u->v and 2k+1 for v->u; loop ids follow,
/// grouped by vertex in ascending order. Inside each vertex subspace edges are
/// ordered by neighbor id with loops last.
struct StateGraph {
  std::vector<DirectedEdge> edges;
  std::vector<std::vector<DirEdgeId>> vertex_subspaces;
  std::vector<std::vector<DirEdgeId>> vertex_loops;
  int structure_edge_count = 0;

  int dim() const { return static_cast<int>(edges.size()); }
  DirEdgeId partner(DirEdgeId e) const { return edges[e].partner; }
  VertexId origin(DirEdgeId e) const { return edges[e].origin; }
  bool is_loop(DirEdgeId e) const { return edges[e].support == kLoopSupport; }
  int degree(VertexId v) const { return static_cast<int>(vertex_subspaces[v].size()); }
  std::pair<DirEdgeId, DirEdgeId> pair_of(EdgeId support) const {
    return {2 * support, 2 * support + 1};
  }
};

StateGraph build_state_graph(const StructureGraph& g);

/// Initial subspace as given in an instance file: either one vertex (meaning
/// all its outgoing edges) or an explicit list of directed edge ids.
struct InitialSpec {
  std::optional<VertexId> vertex;
  std::vector<DirEdgeId> edges;
};

struct WalkInstance {
  StructureGraph structure;
  StateGraph state_graph;
  std::set<VertexId> sink_vertices;
  std::vector<DirEdgeId> initial_edges;     ///< expanded, sorted, non-empty
  std::optional<VertexId> initial_vertex;   ///< set when given as a vertex

  int dim() const { return state_graph.dim(); }
};

/// Assembles and validates a walk instance.
/// Throws std::invalid_argument describing every violation found.
WalkInstance make_instance(StructureGraph g, std::set<VertexId> sinks, InitialSpec initial);

/// Directed edges originating at sink vertices, ascending.
std::vector<DirEdgeId> sink_subspace(const WalkInstance& inst);

}  // namespace qwalk
