#pragma once

#include <string>

#include <json.hpp>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Full transport analysis: trapped basis, projector and the average ATP over
/// the instance's initial subspace, all exact. When basis_path is non-empty
/// the basis dump is written there and referenced in the report.
nlohmann::json analyze(const WalkInstance& inst, const std::string& basis_path = "");

/// Basis dump: [{"kind": ..., "amplitudes": {edge_id: "p/q"}}].
nlohmann::json basis_dump(const WalkInstance& inst);

struct VerifyOptions {
  bool exhaustive = false;   ///< force exhaustive configuration checks
  int sampled_configs = 200;
  double sim_tolerance = 1e-3;
  int sim_steps = 10000;
  double pi = 0.5;
};

/// Cross-check report: construction rank vs dimension count, span equality
/// against the exact null-space oracle, eigenstate checks over percolation
/// configurations, simulated trace limit vs projector overlap, and (for small
/// state spaces) the attractor-space dimension count. "pass" is the
/// conjunction of every check.
nlohmann::json verify(const WalkInstance& inst, const VerifyOptions& opt = {});

}  // namespace qwalk
