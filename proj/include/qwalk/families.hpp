#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Parameterized graph family request. Families:
///   multi_loop      n >= 2: initial vertex with n-1 unpaired loops, one edge
///                   to the sink vertex.
///   star_single     n >= 3, L >= 0: root with n branches (n-1 looped chains
///                   of length L, one sink chain); initial subspace is the
///                   single root edge toward the first branch.
///   star_full       same graph, initial subspace is the whole root vertex.
///   minimal_a..d    L >= 0: smallest graphs carrying exactly one trapped
///                   state of the given type, initial vertex of degree 2,
///                   pendant sink.
///   fig_eight       triangle carrying the initial vertices fused through a
///                   crossing vertex to an inner cycle (length 4, or 3 with
///                   variant=1), pendant sink beyond the inner cycle.
///   hollow_prism    n >= 3, H >= 2: two n-cycles joined by n chains of H
///                   edges; sink mid-chain (height sink_height, default H/2),
///                   initial vertex on the bottom base next to the sink chain.
///   stacked_prism   hollow prism plus the H-1 intermediate rings; sink at
///                   sink_height on chain 0.
///   sink_placement  variant 0|1|2: two triangles joined by a path of L >= 1
///                   edges, with the pendant sink attached near, mid, or far;
///                   shared edges keep identical ids across variants.
///   random          seeded random connected simple graph (|V| <= 8 by
///                   default), random sink/initial choice.
struct FamilySpec {
  std::string family;
  int n = 0;
  int L = 0;
  int H = 0;
  int variant = 0;
  std::optional<int> sink_height;
  std::uint64_t seed = 1;
};

WalkInstance generate(const FamilySpec& spec);

/// Random connected simple graph: a random attachment tree plus extra edges,
/// with up to max_loops unpaired loops per vertex.
StructureGraph random_connected_graph(std::mt19937_64& rng, int max_vertices = 8,
                                      int max_loops = 3);

}  // namespace qwalk
