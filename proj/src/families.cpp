#include "qwalk/families.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qwalk {

namespace {

DirEdgeId directed_id(const StructureGraph& g, EdgeId k, VertexId origin) {
  return g.edges[k].first == origin ? 2 * k : 2 * k + 1;
}

WalkInstance multi_loop(int n) {
  if (n < 2) throw std::invalid_argument("multi_loop requires n >= 2");
  auto g = make_graph(2, {{0, 1}}, {{0, n - 1}});
  return make_instance(std::move(g), {1}, {.vertex = 0, .edges = {}});
}

// Root of degree n with n-1 looped branches of length L and one sink chain.
WalkInstance star(int n, int L, bool single_edge_initial) {
  if (n < 3 || L < 0) throw std::invalid_argument("star requires n >= 3, L >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::map<VertexId, int> loops;
  int next = 1;
  EdgeId first_branch_edge = -1;
  for (int b = 0; b < n - 1; ++b) {
    if (L == 0) {
      loops[0] += 1;
      continue;
    }
    VertexId prev = 0;
    for (int j = 0; j < L; ++j) {
      if (b == 0 && j == 0) first_branch_edge = static_cast<EdgeId>(edges.size());
      edges.emplace_back(prev, next);
      prev = next++;
    }
    loops[prev] += 1;
  }
  VertexId prev = 0;
  for (int j = 0; j < std::max(L, 1); ++j) {
    edges.emplace_back(prev, next);
    prev = next++;
  }
  VertexId sink = prev;
  auto g = make_graph(next, std::move(edges), loops);

  InitialSpec initial;
  if (!single_edge_initial) {
    initial.vertex = 0;
  } else if (L == 0) {
    StateGraph sg = build_state_graph(g);
    initial.edges = {sg.vertex_loops[0][0]};
  } else {
    initial.edges = {directed_id(g, first_branch_edge, 0)};
  }
  return make_instance(std::move(g), {sink}, std::move(initial));
}

// Even cycle of length 4+2L with a pendant sink; initial vertex across.
WalkInstance minimal_a(int L) {
  if (L < 0) throw std::invalid_argument("minimal_a requires L >= 0");
  const int m = 4 + 2 * L;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, m - 1);
  edges.emplace_back(0, m);  // pendant sink
  auto g = make_graph(m + 1, std::move(edges));
  return make_instance(std::move(g), {m}, {.vertex = m / 2, .edges = {}});
}

// Two triangles joined by a path of L edges; optional pendant placement used
// by the sink_placement family. attach < 0 means the canonical placement.
WalkInstance two_triangles(int L, int attach_variant) {
  if (L < 0) throw std::invalid_argument("requires L >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges = {{0, 1}, {1, 2}, {0, 2}};
  VertexId prev = 2;
  int next = 3;
  for (int j = 0; j < L; ++j) {
    edges.emplace_back(prev, next);
    prev = next++;
  }
  VertexId a2 = prev, x = next++, y = next++;
  edges.emplace_back(a2, x);
  edges.emplace_back(x, y);
  edges.emplace_back(a2, y);
  VertexId pendant_at;
  switch (attach_variant) {
    case -1: pendant_at = x; break;                    // canonical minimal_b
    case 0: pendant_at = 1; break;                     // near the initial triangle
    case 1: pendant_at = L >= 2 ? 2 + (L + 1) / 2 : a2; break;  // along the path
    case 2: pendant_at = y; break;                     // far triangle
    default: throw std::invalid_argument("sink_placement variant must be 0, 1 or 2");
  }
  VertexId s = next++;
  edges.emplace_back(pendant_at, s);
  auto g = make_graph(next, std::move(edges));
  return make_instance(std::move(g), {s}, {.vertex = 0, .edges = {}});
}

// Path of L edges with unpaired loops at both ends and a pendant sink.
WalkInstance minimal_c(int L) {
  if (L < 0) throw std::invalid_argument("minimal_c requires L >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::map<VertexId, int> loops;
  if (L == 0) {
    loops[0] = 2;
    edges.emplace_back(0, 1);
    auto g = make_graph(2, std::move(edges), loops);
    StateGraph sg = build_state_graph(g);
    InitialSpec initial;
    initial.edges = sg.vertex_loops[0];  // both loops, not the sink edge
    return make_instance(std::move(g), {1}, std::move(initial));
  }
  for (int j = 0; j < L; ++j) edges.emplace_back(j, j + 1);
  loops[0] = 1;
  loops[L] = 1;
  edges.emplace_back(L, L + 1);
  auto g = make_graph(L + 2, std::move(edges), loops);
  return make_instance(std::move(g), {L + 1}, {.vertex = 0, .edges = {}});
}

// Triangle, path of L edges, terminal unpaired loop, pendant sink.
WalkInstance minimal_d(int L) {
  if (L < 0) throw std::invalid_argument("minimal_d requires L >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges = {{0, 1}, {1, 2}, {0, 2}};
  VertexId prev = 2;
  int next = 3;
  for (int j = 0; j < L; ++j) {
    edges.emplace_back(prev, next);
    prev = next++;
  }
  std::map<VertexId, int> loops{{prev, 1}};
  VertexId s = next++;
  edges.emplace_back(prev, s);
  auto g = make_graph(next, std::move(edges), loops);
  return make_instance(std::move(g), {s}, {.vertex = 0, .edges = {}});
}

// Triangle holding the initial vertices fused at a crossing vertex to an
// inner cycle (even by default), pendant sink behind the inner cycle.
WalkInstance fig_eight(int inner_length) {
  if (inner_length != 3 && inner_length != 4)
    throw std::invalid_argument("fig_eight inner cycle must have length 3 or 4");
  const int m = inner_length;
  std::vector<std::pair<VertexId, VertexId>> edges = {{0, 1}, {0, 2}, {1, 2}};
  for (int i = 0; i + 1 < m; ++i) edges.emplace_back(2 + i, 2 + i + 1);
  edges.emplace_back(2, 2 + m - 1);
  VertexId pendant_at = 2 + m / 2;
  VertexId s = 2 + m;
  edges.emplace_back(pendant_at, s);
  auto g = make_graph(2 + m + 1, std::move(edges));
  StateGraph sg = build_state_graph(g);
  InitialSpec initial;
  for (VertexId v : {0, 1})
    for (DirEdgeId e : sg.vertex_subspaces[v]) initial.edges.push_back(e);
  return make_instance(std::move(g), {s}, std::move(initial));
}

struct PrismIds {
  int n, H;
  VertexId bottom(int i) const { return i; }
  VertexId chain(int i, int j) const { return n + i * (H - 1) + (j - 1); }  // j in 1..H-1
  VertexId top(int i) const { return n + n * (H - 1) + i; }
  int vertex_count() const { return n * (H + 1); }
};

WalkInstance prism(int n, int H, std::optional<int> sink_height, bool stacked) {
  if (n < 3 || H < 2) throw std::invalid_argument("prism requires n >= 3, H >= 2");
  int h = sink_height.value_or(std::max(1, H / 2));
  if (h < 1 || h > H - 1)
    throw std::invalid_argument("prism sink height must lie strictly between the bases");
  PrismIds ids{n, H};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(ids.bottom(i), ids.bottom(i + 1));
  edges.emplace_back(ids.bottom(0), ids.bottom(n - 1));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(ids.top(i), ids.top(i + 1));
  edges.emplace_back(ids.top(0), ids.top(n - 1));
  for (int i = 0; i < n; ++i) {
    VertexId prev = ids.bottom(i);
    for (int j = 1; j <= H - 1; ++j) {
      edges.emplace_back(prev, ids.chain(i, j));
      prev = ids.chain(i, j);
    }
    edges.emplace_back(prev, ids.top(i));
  }
  if (stacked)
    for (int j = 1; j <= H - 1; ++j) {
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(ids.chain(i, j), ids.chain(i + 1, j));
      edges.emplace_back(ids.chain(0, j), ids.chain(n - 1, j));
    }
  auto g = make_graph(ids.vertex_count(), std::move(edges));
  return make_instance(std::move(g), {ids.chain(0, h)}, {.vertex = ids.bottom(1), .edges = {}});
}

WalkInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StructureGraph g = random_connected_graph(rng);
  std::set<VertexId> sinks;
  if (g.vertex_count >= 2 && std::bernoulli_distribution(0.5)(rng)) {
    int count = std::uniform_int_distribution<int>(1, std::min(2, g.vertex_count - 1))(rng);
    while (static_cast<int>(sinks.size()) < count)
      sinks.insert(std::uniform_int_distribution<int>(0, g.vertex_count - 1)(rng));
    if (static_cast<int>(sinks.size()) >= g.vertex_count) sinks.erase(sinks.begin());
  }
  VertexId initial = 0;
  while (sinks.count(initial)) ++initial;
  return make_instance(std::move(g), std::move(sinks), {.vertex = initial, .edges = {}});
}

}  // namespace

StructureGraph random_connected_graph(std::mt19937_64& rng, int max_vertices, int max_loops) {
  const int v_count = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < v_count; ++v)
    edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  const double density = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  std::bernoulli_distribution extra(density);
  std::set<std::pair<VertexId, VertexId>> present(edges.begin(), edges.end());
  for (VertexId u = 0; u < v_count; ++u)
    for (VertexId v = u + 1; v < v_count; ++v)
      if (!present.count({u, v}) && extra(rng)) edges.emplace_back(u, v);
  std::map<VertexId, int> loops;
  std::bernoulli_distribution has_loops(0.35);
  for (VertexId v = 0; v < v_count; ++v)
    if (has_loops(rng)) loops[v] = std::uniform_int_distribution<int>(1, max_loops)(rng);
  if (v_count == 1 && loops.empty()) loops[0] = 1;  // keep the state space non-empty
  return make_graph(v_count, std::move(edges), loops);
}

WalkInstance generate(const FamilySpec& spec) {
  const std::string& f = spec.family;
  if (f == "multi_loop") return multi_loop(spec.n);
  if (f == "star_single") return star(spec.n, spec.L, true);
  if (f == "star_full") return star(spec.n, spec.L, false);
  if (f == "minimal_a") return minimal_a(spec.L);
  if (f == "minimal_b") return two_triangles(spec.L, -1);
  if (f == "minimal_c") return minimal_c(spec.L);
  if (f == "minimal_d") return minimal_d(spec.L);
  if (f == "fig_eight") return fig_eight(spec.variant == 1 ? 3 : 4);
  if (f == "hollow_prism") return prism(spec.n, spec.H, spec.sink_height, false);
  if (f == "stacked_prism") return prism(spec.n, spec.H, spec.sink_height, true);
  if (f == "sink_placement") {
    if (spec.L < 1) throw std::invalid_argument("sink_placement requires L >= 1");
    return two_triangles(spec.L, spec.variant);
  }
  if (f == "random") return random_instance(spec.seed);
  throw std::invalid_argument("unknown family '" + f + "'");
}

}  // namespace qwalk
