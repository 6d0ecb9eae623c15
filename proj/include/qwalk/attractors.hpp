#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"
#include "qwalk/rational.hpp"

namespace qwalk {

/// Local coin condition: the restriction of phi to every vertex subspace is a
/// lambda-eigenvector of the reflection coin. Exact for rational amplitudes
/// (lambda = +1: all entries equal; lambda = -1: entries sum to zero).
bool check_coin_condition(const RationalVector& phi, int lambda, const StateGraph& sg);

/// Pair condition: equal amplitudes on every directed edge and its partner
/// (vacuous on unpaired loops).
bool check_shift_condition(const RationalVector& phi, const StateGraph& sg);

/// Exact application of one percolated walk step to a rational vector for the
/// given open-edge configuration.
RationalVector apply_walk_exact(const RationalVector& phi, const StateGraph& sg,
                                const std::vector<std::uint8_t>& open);

struct EigenstateCheckOptions {
  bool exhaustive = true;  ///< all 2^E configurations (guarded at E <= 20)
  int samples = 200;
  std::uint64_t seed = 7;
};

/// Common-eigenstate check: U_K phi == lambda phi for every tested
/// configuration, in exact arithmetic.
bool check_common_eigenstate(const RationalVector& phi, int lambda, const WalkInstance& inst,
                             const EigenstateCheckOptions& opt = {});

inline constexpr int kAttractorDimCap = 20;

struct AttractorSpaceResult {
  int dim_plus = 0;
  int dim_minus = 0;
  std::vector<Eigen::MatrixXd> basis_plus;
  std::vector<Eigen::MatrixXd> basis_minus;
  double smallest_kept_sv = 1.0;   ///< smallest singular value treated as nonzero
  double largest_dropped_sv = 0.0; ///< largest singular value treated as zero

  int total() const { return dim_plus + dim_minus; }
};

/// Joint eigenproblem for the attractor equation U_K X U_K^dag = lambda X over
/// every configuration, solved numerically by intersecting the per-config
/// kernels (rank tolerance 1e-8). Sinks of the instance are ignored; the walk
/// is the unsinked percolated evolution. Throws beyond kAttractorDimCap.
AttractorSpaceResult attractor_space_dimension(const WalkInstance& inst);

/// Counts implied by the common-eigenstate structure: with k trapped states
/// and the single all-ones state, the outer products give k^2+1 attractors at
/// lambda=+1 and 2k at lambda=-1; the identity adds one more at +1.
///
/// One family escapes the outer-product picture: when the structure graph is
/// a bare even cycle every vertex has degree 2, all walk operators are
/// permutations, and the diagonal matrix of the alternating trapped state is
/// a further lambda=-1 attractor (a classical period-two oscillation of the
/// edge occupations). has_diagonal_extra marks it and dim_minus includes it.
struct ExpectedAttractorDims {
  int dim_plus = 0;
  int dim_minus = 0;
  int p_attractor_count = 0;
  bool has_diagonal_extra = false;
  int total() const { return dim_plus + dim_minus; }
};
ExpectedAttractorDims expected_attractor_dims(const WalkInstance& inst);

/// Element-wise attractor conditions on a matrix over the directed-edge
/// basis: entries must be invariant under partner swaps on rows and columns
/// (with the diagonal-pair identities), and separately the p-attractor
/// equality X[e][e] == X[e][partner(e)].
struct ShiftConditionReport {
  bool attractor_ok = false;
  bool p_attractor_equality = false;
  double max_attractor_residual = 0.0;
  double max_p_equality_residual = 0.0;
};

ShiftConditionReport check_attractor_shift_elementwise(const Eigen::MatrixXcd& x,
                                                       const StateGraph& sg, double tol = 1e-10);

/// Unit-modulus eigenvalues of the percolated evolution superoperator
/// (|eigenvalue| > 1 - tol). For the reflection coin these are +1 and -1.
std::vector<std::complex<double>> channel_unit_eigenvalues(const WalkInstance& inst, double pi,
                                                           double tol = 1e-8);

}  // namespace qwalk
