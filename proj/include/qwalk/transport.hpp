#pragma once

#include <vector>

#include "qwalk/rational.hpp"
#include "qwalk/trapped.hpp"

namespace qwalk {

/// Exact orthogonal projector onto the span of a set of trapped states.
struct Projector {
  RationalMatrix matrix;  ///< symmetric, idempotent
  int rank = 0;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Projector via normal equations, P = B (B^T B)^-1 B^T, entirely in
/// rationals so no orthogonalization (and no square roots) is needed. The
/// result does not depend on the basis choice. Throws std::invalid_argument
/// naming the first redundant state if the input is linearly dependent.
Projector projector(const std::vector<TrappedState>& basis, int dim);

/// Initial state of the walk: a pure state with exact rational real/imaginary
/// amplitude parts (not necessarily normalized), or the maximally mixed state
/// on a list of directed edges.
struct InitialState {
  enum class Kind { Pure, MaximallyMixed };
  Kind kind = Kind::MaximallyMixed;
  RationalVector re, im;             ///< Pure
  std::vector<DirEdgeId> subspace;   ///< MaximallyMixed

  static InitialState pure(RationalVector real_part, RationalVector imag_part = {});
  static InitialState maximally_mixed(std::vector<DirEdgeId> edges);
};

/// Asymptotic transport probability q = 1 - Tr(P rho0), exact.
Rational atp(const Projector& p, const InitialState& rho0);

/// Average ATP over the maximally mixed state of a non-empty edge subspace:
/// 1 - (sum of diagonal projector entries over the subspace) / dimension.
Rational average_atp(const Projector& p, const std::vector<DirEdgeId>& subspace);

enum class Family {
  MultiLoop,      // two vertices, one edge, n-1 loops at the initial vertex
  StarSingle,     // star, single fixed initial edge
  StarFull,       // star, whole root subspace initial
  MinimalA,
  MinimalB,
  MinimalC,
  MinimalD,
  HollowPrismTri, // triangular hollow prism
};

struct FamilyParams {
  int n = 0;
  int L = 0;
  int H = 0;
};

/// Closed-form average ATP for the catalogued graph families.
/// Throws std::invalid_argument for out-of-range parameters.
Rational closed_form(Family family, const FamilyParams& p);

}  // namespace qwalk
