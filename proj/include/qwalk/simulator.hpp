#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"
#include "qwalk/trapped.hpp"

namespace qwalk {

/// Reflection coin block 2|phi_d><phi_d| - I of dimension d.
Eigen::MatrixXd grover_block(int d);

/// Full coin: the per-vertex reflection blocks assembled over the
/// directed-edge basis (block diagonal in vertex subspaces).
Eigen::MatrixXd coin_matrix(const StateGraph& sg);

/// Percolated shift as an index permutation: paired directed edges swap when
/// their support edge is open, everything else (closed edges, loops) stays.
/// open[k] refers to the undirected edge k.
std::vector<int> shift_permutation(const StateGraph& sg, const std::vector<std::uint8_t>& open);

Eigen::MatrixXd shift_matrix(const StateGraph& sg, const std::vector<std::uint8_t>& open);

/// Largest edge count for which the exact percolated step is offered.
inline constexpr int kExactEdgeCap = 14;

/// One exact step of the sinked percolated walk: the configuration average
/// sum_K pi_K P (U_K rho U_K^dag) P. Computed edge by edge (each undirected
/// edge contributes an independent open/closed mixture), which equals the
/// 2^E configuration sum exactly. Throws std::invalid_argument beyond
/// kExactEdgeCap with a hint to use Monte Carlo mode.
Eigen::MatrixXcd step_exact(const Eigen::MatrixXcd& rho, const WalkInstance& inst, double pi);

/// Literal 2^E configuration sum (reference implementation for tests).
Eigen::MatrixXcd step_config_sum(const Eigen::MatrixXcd& rho, const WalkInstance& inst, double pi);

/// One sampled step: a single configuration drawn edge-wise with probability
/// pi, deterministic under a fixed generator state.
Eigen::MatrixXcd step_mc(const Eigen::MatrixXcd& rho, const WalkInstance& inst, double pi,
                         std::mt19937_64& rng);

enum class SimMode { Exact, MonteCarlo };

struct SimOptions {
  double pi = 0.5;
  int steps = 10000;
  SimMode mode = SimMode::Exact;
  int samples = 1;          ///< Monte Carlo trajectories to average
  std::uint64_t seed = 1;
  double stop_eps = 1e-6;   ///< exact mode stops once the trace moves less
  int stop_window = 50;     ///< than stop_eps over this many steps
};

struct SimResult {
  std::vector<double> trace;      ///< trace[t], t = 0..steps_run
  std::vector<double> trace_err;  ///< Monte Carlo standard error (0 in exact mode)
  Eigen::MatrixXcd final_rho;
  int steps_run = 0;
  bool stopped_early = false;
};

/// Runs the sinked percolated walk from rho0 and records the surviving
/// probability Tr rho(t), which is non-increasing and converges to the
/// trapped overlap of the initial state.
SimResult simulate(const Eigen::MatrixXcd& rho0, const WalkInstance& inst, const SimOptions& opt);

/// Maximally mixed density matrix on the instance's initial subspace.
Eigen::MatrixXcd maximally_mixed_density(const WalkInstance& inst);

/// |psi><psi| / <psi|psi>.
Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi);

/// Attractor: eigen-matrix of the percolated evolution map with a
/// unit-modulus eigenvalue (here always +1 or -1).
struct Attractor {
  Eigen::MatrixXcd X;
  int lambda = 1;
};

/// Orthonormal (Hilbert-Schmidt) attractor basis assembled from the common
/// eigenstates: all outer products |phi_a><phi_b| graded by the eigenvalue
/// product, plus the identity when no sink is present.
std::vector<Attractor> attractor_basis(const WalkInstance& inst, bool with_sink);

/// Asymptotic state sum_{lambda,i} lambda^t Tr(rho0 X_i^dag) X_i. The basis
/// must be orthonormal under the trace inner product (checked to 1e-12).
Eigen::MatrixXcd asymptotic_state(const Eigen::MatrixXcd& rho0,
                                  const std::vector<Attractor>& basis, long t);

}  // namespace qwalk
