#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/cycles.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/rational.hpp"

namespace qwalk {

enum class StateKind { TypeA, TypeB, TypeC, TypeD, Oracle, AllOnes };

std::string to_string(StateKind k);

/// Exact-amplitude vector over a directed-edge basis.
///
/// Constructed states satisfy the pair condition (equal amplitude on a
/// directed edge and its partner) and have zero amplitude sum inside every
/// vertex subspace, which makes them eigenvalue -1 eigenstates of the walk for
/// every percolation configuration. AllOnes is the lone eigenvalue +1 state
/// and is not sink-resistant.
struct TrappedState {
  RationalVector amplitudes;
  StateKind kind = StateKind::Oracle;

  std::vector<DirEdgeId> support() const;
  Rational squared_norm() const;
  bool is_zero() const;
};

/// Connected piece of the structure graph left after deleting the sink
/// vertices and every edge touching them, with maps back to original ids.
struct ReducedComponent {
  StructureGraph graph;
  std::vector<VertexId> vertex_map;  ///< local vertex -> original vertex
  std::vector<EdgeId> edge_map;      ///< local undirected edge -> original edge
};

struct ReducedGraph {
  std::vector<ReducedComponent> components;
};

/// Sink removal; components come out ordered by their smallest original
/// vertex. All vertices being sinks yields an empty component list.
ReducedGraph reduce_by_sink(const WalkInstance& inst);

/// Dimension of the eigenvalue -1 common-eigenstate subspace of one connected
/// component: E - V + L, or E - V + 1 when the component is bipartite and has
/// no unpaired loops (never negative).
int expected_dimension(const StructureGraph& g0);

/// End of a connecting trapped state: an odd fundamental cycle or one
/// unpaired loop. The anchor is where a connecting path may attach.
struct TerminationElement {
  enum class Kind { OddCycle, UnpairedLoop };
  Kind kind = Kind::UnpairedLoop;
  std::optional<FundamentalCycle> cycle;
  VertexId loop_vertex = -1;
  int loop_index = 0;

  VertexId anchor() const;
  friend bool operator==(const TerminationElement& a, const TerminationElement& b);
};

/// Alternating +/-1 state on an even fundamental cycle, +1 on the recovered
/// edge. Throws std::invalid_argument for odd cycles.
TrappedState build_A_state(const FundamentalCycle& c, const StructureGraph& g,
                           const StateGraph& sg);

/// State carried by two termination elements and the tree path between their
/// anchors: loop weight w, path alternating +/-w, odd-cycle edges alternating
/// +/-(w/2) with equal signs at the anchor; w = 1 for loop-loop and 2 when a
/// cycle participates. Overlapping contributions add. Throws
/// std::runtime_error when everything cancels (degenerate input).
TrappedState build_connecting_state(const TerminationElement& t1, const TerminationElement& t2,
                                    const SpanningTree& tree, const StructureGraph& g,
                                    const StateGraph& sg);

struct BasisReport {
  bool oracle_fallback = false;
};

/// Complete basis of eigenvalue -1 common eigenstates of one connected
/// component, over the component's own state graph: one A state per even
/// fundamental cycle plus connecting states pairing every further termination
/// element with a canonical reference (lowest anchor, loops before cycles).
/// Falls back to the exact null-space oracle (and flags the report) if the
/// construction were ever rank deficient.
std::vector<TrappedState> trapped_basis(const StructureGraph& g0, const SpanningTree& tree,
                                        BasisReport* report = nullptr);

/// The eigenvalue +1 common eigenstate: all amplitudes one.
TrappedState all_ones_state(const StateGraph& sg);

/// Independent oracle: exact rational kernel of the per-vertex zero-sum
/// conditions intersected with the pair conditions, over the state graph of
/// g0. Spans the same subspace as trapped_basis.
std::vector<TrappedState> null_space_oracle(const StructureGraph& g0);

using TreeChooser = std::function<SpanningTree(const StructureGraph&)>;

/// Sink-resistant trapped basis of a full instance, embedded into the
/// instance's directed-edge basis (constructed per reduced component and
/// merged in component order).
std::vector<TrappedState> sr_trapped_basis(const WalkInstance& inst,
                                           const TreeChooser& choose_tree = {},
                                           BasisReport* report = nullptr);

/// Instance-level oracle working directly in the full directed-edge space:
/// kernel of {vertex sums zero} + {pair conditions} + {zero on the sink
/// subspace}.
std::vector<TrappedState> sr_null_space_oracle(const WalkInstance& inst);

/// Squared overlap of a state with the sink subspace.
Rational sink_overlap(const TrappedState& state, const WalkInstance& inst);

}  // namespace qwalk
