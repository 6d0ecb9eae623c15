#include "qwalk/trapped.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "qwalk/exact.hpp"

namespace qwalk {

std::string to_string(StateKind k) {
  switch (k) {
    case StateKind::TypeA: return "A";
    case StateKind::TypeB: return "B";
    case StateKind::TypeC: return "C";
    case StateKind::TypeD: return "D";
    case StateKind::Oracle: return "oracle";
    case StateKind::AllOnes: return "ones";
  }
  return "?";
}

std::vector<DirEdgeId> TrappedState::support() const {
  std::vector<DirEdgeId> out;
  for (Eigen::Index e = 0; e < amplitudes.size(); ++e)
    if (!amplitudes(e).is_zero()) out.push_back(static_cast<DirEdgeId>(e));
  return out;
}

Rational TrappedState::squared_norm() const {
  Rational s = 0;
  for (Eigen::Index e = 0; e < amplitudes.size(); ++e) s += amplitudes(e) * amplitudes(e);
  return s;
}

bool TrappedState::is_zero() const {
  for (Eigen::Index e = 0; e < amplitudes.size(); ++e)
    if (!amplitudes(e).is_zero()) return false;
  return true;
}

ReducedGraph reduce_by_sink(const WalkInstance& inst) {
  const StructureGraph& g = inst.structure;
  std::vector<char> alive(g.vertex_count, 1);
  for (VertexId s : inst.sink_vertices) alive[s] = 0;

  // Adjacency restricted to edges with both endpoints alive.
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.vertex_count);
  for (EdgeId k = 0; k < g.edge_count(); ++k) {
    auto [u, v] = g.edges[k];
    if (!alive[u] || !alive[v]) continue;
    adj[u].emplace_back(v, k);
    adj[v].emplace_back(u, k);
  }

  ReducedGraph out;
  std::vector<int> comp(g.vertex_count, -1);
  for (VertexId s = 0; s < g.vertex_count; ++s) {
    if (!alive[s] || comp[s] >= 0) continue;
    int id = static_cast<int>(out.components.size());
    std::vector<VertexId> members;
    std::queue<VertexId> bfs;
    bfs.push(s);
    comp[s] = id;
    while (!bfs.empty()) {
      VertexId u = bfs.front();
      bfs.pop();
      members.push_back(u);
      for (auto [w, k] : adj[u])
        if (comp[w] < 0) {
          comp[w] = id;
          bfs.push(w);
        }
    }
    std::sort(members.begin(), members.end());
    ReducedComponent rc;
    rc.vertex_map = members;
    std::vector<int> local_of(g.vertex_count, -1);
    for (int i = 0; i < static_cast<int>(members.size()); ++i) local_of[members[i]] = i;
    rc.graph.vertex_count = static_cast<int>(members.size());
    rc.graph.loop_counts.resize(members.size());
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
      rc.graph.loop_counts[i] = g.loops_at(members[i]);
    for (EdgeId k = 0; k < g.edge_count(); ++k) {
      auto [u, v] = g.edges[k];
      if (!alive[u] || !alive[v] || comp[u] != id) continue;
      rc.graph.edges.emplace_back(local_of[u], local_of[v]);
      rc.edge_map.push_back(k);
    }
    for (auto& [u, v] : rc.graph.edges)
      if (u > v) std::swap(u, v);
    out.components.push_back(std::move(rc));
  }
  return out;
}

int expected_dimension(const StructureGraph& g0) {
  int loops = g0.loop_total();
  int n = g0.edge_count() - g0.vertex_count;
  n += (loops == 0 && is_bipartite(g0)) ? 1 : loops;
  return std::max(n, 0);
}

VertexId TerminationElement::anchor() const {
  if (kind == Kind::UnpairedLoop) return loop_vertex;
  VertexId a = cycle->cycle_vertices.front();
  for (VertexId v : cycle->cycle_vertices) a = std::min(a, v);
  return a;
}

bool operator==(const TerminationElement& a, const TerminationElement& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == TerminationElement::Kind::UnpairedLoop)
    return a.loop_vertex == b.loop_vertex && a.loop_index == b.loop_index;
  return a.cycle->recovered_edge == b.cycle->recovered_edge;
}

namespace {

// Per-undirected-edge and per-loop amplitude accumulator. A trapped state at
// eigenvalue -1 is fully described by one value per support edge (equal on
// both directions) plus one value per loop.
struct Accumulator {
  std::vector<Rational> edge_vals;
  std::vector<std::vector<Rational>> loop_vals;

  Accumulator(const StructureGraph& g) : edge_vals(g.edge_count(), Rational(0)) {
    loop_vals.reserve(g.vertex_count);
    for (VertexId v = 0; v < g.vertex_count; ++v)
      loop_vals.emplace_back(g.loops_at(v), Rational(0));
  }

  // Alternating values around a cycle, starting at the walk position `start`
  // (both edges incident to cycle_vertices[start] get the same sign iff the
  // cycle is odd).
  void add_cycle(const FundamentalCycle& c, int start, const Rational& first) {
    const int m = c.length();
    Rational w = first;
    for (int i = 0; i < m; ++i) {
      edge_vals[c.cycle_edges[(start + i) % m]] += w;
      w = -w;
    }
  }

  void add_loop(VertexId v, int index, const Rational& w) { loop_vals[v][index] += w; }

  // Alternating values along a path given as consecutive edge ids.
  void add_path(const std::vector<EdgeId>& path, const Rational& first) {
    Rational w = first;
    for (EdgeId k : path) {
      edge_vals[k] += w;
      w = -w;
    }
  }

  TrappedState to_state(const StateGraph& sg, StateKind kind) const {
    TrappedState st;
    st.kind = kind;
    st.amplitudes = RationalVector::Zero(sg.dim());
    for (EdgeId k = 0; k < static_cast<EdgeId>(edge_vals.size()); ++k) {
      st.amplitudes(2 * k) = edge_vals[k];
      st.amplitudes(2 * k + 1) = edge_vals[k];
    }
    for (VertexId v = 0; v < static_cast<VertexId>(loop_vals.size()); ++v)
      for (int j = 0; j < static_cast<int>(loop_vals[v].size()); ++j)
        st.amplitudes(sg.vertex_loops[v][j]) = loop_vals[v][j];
    return st;
  }
};

int cycle_position_of(const FundamentalCycle& c, VertexId v) {
  for (int i = 0; i < static_cast<int>(c.cycle_vertices.size()); ++i)
    if (c.cycle_vertices[i] == v) return i;
  throw std::logic_error("vertex not on cycle");
}

// Adds one termination element whose vertex-sum contribution at its anchor is
// `outflow` (the loop value, or twice the per-edge cycle value).
void add_termination(Accumulator& acc, const TerminationElement& t, const Rational& outflow) {
  if (t.kind == TerminationElement::Kind::UnpairedLoop) {
    acc.add_loop(t.loop_vertex, t.loop_index, outflow);
  } else {
    acc.add_cycle(*t.cycle, cycle_position_of(*t.cycle, t.anchor()), outflow / Rational(2));
  }
}

}  // namespace

TrappedState build_A_state(const FundamentalCycle& c, const StructureGraph& g,
                           const StateGraph& sg) {
  if (c.parity == Parity::Odd)
    throw std::invalid_argument("build_A_state: cycle has odd length");
  Accumulator acc(g);
  acc.add_cycle(c, 0, Rational(1));
  return acc.to_state(sg, StateKind::TypeA);
}

TrappedState build_connecting_state(const TerminationElement& t1, const TerminationElement& t2,
                                    const SpanningTree& tree, const StructureGraph& g,
                                    const StateGraph& sg) {
  if (t1 == t2) throw std::invalid_argument("build_connecting_state: identical elements");
  const bool loops_only = t1.kind == TerminationElement::Kind::UnpairedLoop &&
                          t2.kind == TerminationElement::Kind::UnpairedLoop;
  const Rational w = loops_only ? 1 : 2;

  Accumulator acc(g);
  add_termination(acc, t1, w);

  auto path = tree_path(tree, g, t1.anchor(), t2.anchor());
  Rational end_flow = w;  // vertex-sum the path (or t1 itself) delivers at t2's anchor
  if (!path.empty()) {
    acc.add_path(path, -w);
    end_flow = (path.size() % 2 == 1) ? -w : w;
  }
  add_termination(acc, t2, -end_flow);

  StateKind kind;
  if (loops_only)
    kind = StateKind::TypeC;
  else if (t1.kind == TerminationElement::Kind::OddCycle &&
           t2.kind == TerminationElement::Kind::OddCycle)
    kind = StateKind::TypeB;
  else
    kind = StateKind::TypeD;

  TrappedState st = acc.to_state(sg, kind);
  if (st.is_zero())
    throw std::runtime_error("build_connecting_state: contributions cancelled to zero");
  return st;
}

TrappedState all_ones_state(const StateGraph& sg) {
  TrappedState st;
  st.kind = StateKind::AllOnes;
  st.amplitudes = RationalVector::Constant(sg.dim(), Rational(1));
  return st;
}

namespace {

std::vector<TerminationElement> termination_elements(const StructureGraph& g,
                                                     const std::vector<FundamentalCycle>& fcs) {
  std::vector<TerminationElement> out;
  for (VertexId v = 0; v < g.vertex_count; ++v)
    for (int j = 0; j < g.loops_at(v); ++j) {
      TerminationElement t;
      t.kind = TerminationElement::Kind::UnpairedLoop;
      t.loop_vertex = v;
      t.loop_index = j;
      out.push_back(t);
    }
  for (const auto& c : fcs)
    if (c.parity == Parity::Odd) {
      TerminationElement t;
      t.kind = TerminationElement::Kind::OddCycle;
      t.cycle = c;
      out.push_back(t);
    }
  // Canonical reference order: loops before cycles, then lowest anchor.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto key = [](const TerminationElement& t) {
      return std::tuple(t.kind == TerminationElement::Kind::OddCycle ? 1 : 0, t.anchor(),
                        t.kind == TerminationElement::Kind::OddCycle ? t.cycle->recovered_edge
                                                                     : t.loop_index);
    };
    return key(a) < key(b);
  });
  return out;
}

RationalMatrix states_as_columns(const std::vector<TrappedState>& states, int dim) {
  RationalMatrix m = RationalMatrix::Zero(dim, static_cast<Eigen::Index>(states.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = states[j].amplitudes;
  return m;
}

}  // namespace

std::vector<TrappedState> trapped_basis(const StructureGraph& g0, const SpanningTree& tree,
                                        BasisReport* report) {
  StateGraph sg = build_state_graph(g0);
  auto fcs = fundamental_cycles(g0, tree);
  const int want = expected_dimension(g0);

  std::vector<TrappedState> states;
  try {
    for (const auto& c : fcs)
      if (c.parity == Parity::Even) states.push_back(build_A_state(c, g0, sg));
    auto terms = termination_elements(g0, fcs);
    for (std::size_t i = 1; i < terms.size(); ++i)
      states.push_back(build_connecting_state(terms[0], terms[i], tree, g0, sg));
    if (exact::rank<Rational>(states_as_columns(states, sg.dim())) == want) return states;
  } catch (const std::runtime_error&) {
    // degenerate cancellation; handled below
  }
  // Should be unreachable; the oracle keeps the contract honest regardless.
  if (report) report->oracle_fallback = true;
  return null_space_oracle(g0);
}

std::vector<TrappedState> null_space_oracle(const StructureGraph& g0) {
  StateGraph sg = build_state_graph(g0);
  const int dim = sg.dim();
  const int rows = g0.vertex_count + g0.edge_count();
  RationalMatrix m = RationalMatrix::Zero(rows, dim);
  for (VertexId v = 0; v < g0.vertex_count; ++v)
    for (DirEdgeId e : sg.vertex_subspaces[v]) m(v, e) = 1;
  for (EdgeId k = 0; k < g0.edge_count(); ++k) {
    m(g0.vertex_count + k, 2 * k) = 1;
    m(g0.vertex_count + k, 2 * k + 1) = -1;
  }
  RationalMatrix kernel = exact::kernel_basis(m);
  std::vector<TrappedState> out;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    TrappedState st;
    st.kind = StateKind::Oracle;
    st.amplitudes = kernel.col(j);
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<TrappedState> sr_trapped_basis(const WalkInstance& inst, const TreeChooser& choose_tree,
                                           BasisReport* report) {
  auto reduced = reduce_by_sink(inst);
  std::vector<TrappedState> out;
  for (const auto& rc : reduced.components) {
    SpanningTree tree = choose_tree ? choose_tree(rc.graph) : spanning_tree(rc.graph);
    BasisReport local;
    auto states = trapped_basis(rc.graph, tree, &local);
    if (report && local.oracle_fallback) report->oracle_fallback = true;

    StateGraph local_sg = build_state_graph(rc.graph);
    for (const auto& st : states) {
      TrappedState global;
      global.kind = st.kind;
      global.amplitudes = RationalVector::Zero(inst.dim());
      for (EdgeId lk = 0; lk < rc.graph.edge_count(); ++lk) {
        EdgeId gk = rc.edge_map[lk];
        global.amplitudes(2 * gk) = st.amplitudes(2 * lk);
        global.amplitudes(2 * gk + 1) = st.amplitudes(2 * lk + 1);
      }
      for (VertexId lv = 0; lv < rc.graph.vertex_count; ++lv) {
        VertexId gv = rc.vertex_map[lv];
        for (int j = 0; j < rc.graph.loops_at(lv); ++j)
          global.amplitudes(inst.state_graph.vertex_loops[gv][j]) =
              st.amplitudes(local_sg.vertex_loops[lv][j]);
      }
      out.push_back(std::move(global));
    }
  }
  return out;
}

std::vector<TrappedState> sr_null_space_oracle(const WalkInstance& inst) {
  const StructureGraph& g = inst.structure;
  const StateGraph& sg = inst.state_graph;
  auto sink_edges = sink_subspace(inst);
  const int rows = g.vertex_count + g.edge_count() + static_cast<int>(sink_edges.size());
  RationalMatrix m = RationalMatrix::Zero(rows, sg.dim());
  for (VertexId v = 0; v < g.vertex_count; ++v)
    for (DirEdgeId e : sg.vertex_subspaces[v]) m(v, e) = 1;
  for (EdgeId k = 0; k < g.edge_count(); ++k) {
    m(g.vertex_count + k, 2 * k) = 1;
    m(g.vertex_count + k, 2 * k + 1) = -1;
  }
  int r = g.vertex_count + g.edge_count();
  for (DirEdgeId e : sink_edges) m(r++, e) = 1;
  RationalMatrix kernel = exact::kernel_basis(m);
  std::vector<TrappedState> out;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    TrappedState st;
    st.kind = StateKind::Oracle;
    st.amplitudes = kernel.col(j);
    out.push_back(std::move(st));
  }
  return out;
}

Rational sink_overlap(const TrappedState& state, const WalkInstance& inst) {
  Rational s = 0;
  for (DirEdgeId e : sink_subspace(inst)) s += state.amplitudes(e) * state.amplitudes(e);
  return s;
}

}  // namespace qwalk
