#include "qwalk/attractors.hpp"

#include <random>
#include <stdexcept>

#include "qwalk/simulator.hpp"
#include "qwalk/trapped.hpp"

namespace qwalk {

using Eigen::MatrixXd;

bool check_coin_condition(const RationalVector& phi, int lambda, const StateGraph& sg) {
  if (lambda != 1 && lambda != -1) throw std::invalid_argument("lambda must be +1 or -1");
  for (const auto& sub : sg.vertex_subspaces) {
    if (sub.empty()) continue;
    if (lambda == -1) {
      Rational sum = 0;
      for (DirEdgeId e : sub) sum += phi(e);
      if (!sum.is_zero()) return false;
    } else {
      for (DirEdgeId e : sub)
        if (phi(e) != phi(sub.front())) return false;
    }
  }
  return true;
}

bool check_shift_condition(const RationalVector& phi, const StateGraph& sg) {
  for (int e = 0; e < sg.dim(); ++e)
    if (phi(e) != phi(sg.partner(e))) return false;
  return true;
}

RationalVector apply_walk_exact(const RationalVector& phi, const StateGraph& sg,
                                const std::vector<std::uint8_t>& open) {
  // Coin: per vertex, (2/d) * sum - phi_e on each subspace entry.
  RationalVector coined = RationalVector::Zero(sg.dim());
  for (const auto& sub : sg.vertex_subspaces) {
    if (sub.empty()) continue;
    Rational sum = 0;
    for (DirEdgeId e : sub) sum += phi(e);
    Rational mean2 = Rational(2) * sum / Rational(static_cast<long long>(sub.size()));
    for (DirEdgeId e : sub) coined(e) = mean2 - phi(e);
  }
  // Percolated shift: swap open pairs.
  auto perm = shift_permutation(sg, open);
  RationalVector out(sg.dim());
  for (int e = 0; e < sg.dim(); ++e) out(perm[e]) = coined(e);
  return out;
}

namespace {

bool equals_scaled(const RationalVector& a, int lambda, const RationalVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Rational want = lambda == 1 ? b(i) : -b(i);
    if (a(i) != want) return false;
  }
  return true;
}

}  // namespace

bool check_common_eigenstate(const RationalVector& phi, int lambda, const WalkInstance& inst,
                             const EigenstateCheckOptions& opt) {
  const int m = inst.structure.edge_count();
  const StateGraph& sg = inst.state_graph;
  std::vector<std::uint8_t> open(m, 0);
  if (opt.exhaustive) {
    if (m > 20) throw std::invalid_argument("exhaustive eigenstate check limited to 20 edges");
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
      for (int k = 0; k < m; ++k) open[k] = (mask >> k) & 1;
      if (!equals_scaled(apply_walk_exact(phi, sg, open), lambda, phi)) return false;
    }
    return true;
  }
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution half(0.5);
  for (int s = 0; s < opt.samples; ++s) {
    for (int k = 0; k < m; ++k) open[k] = half(rng) ? 1 : 0;
    if (!equals_scaled(apply_walk_exact(phi, sg, open), lambda, phi)) return false;
  }
  return true;
}

namespace {

// Kernel of a tall matrix via SVD with a relative rank tolerance.
// (two-sided Jacobi: BDCSVD mishandles inputs with many zero columns)
MatrixXd svd_kernel(const MatrixXd& a, double tol, double* smallest_kept,
                    double* largest_dropped) {
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * std::max(top, 1.0)) {
      ++rank;
      if (smallest_kept) *smallest_kept = std::min(*smallest_kept, sv(i));
    } else if (largest_dropped) {
      *largest_dropped = std::max(*largest_dropped, sv(i));
    }
  }
  return svd.matrixV().rightCols(sv.size() - rank);
}

}  // namespace

AttractorSpaceResult attractor_space_dimension(const WalkInstance& inst) {
  const StateGraph& sg = inst.state_graph;
  const int d = sg.dim();
  if (d > kAttractorDimCap)
    throw std::invalid_argument("attractor_space_dimension: state dimension exceeds cap " +
                                std::to_string(kAttractorDimCap));
  const int m = inst.structure.edge_count();
  const MatrixXd coin = coin_matrix(sg);

  AttractorSpaceResult res;
  for (int lambda : {1, -1}) {
    // Current candidate space, one vectorized matrix per column.
    MatrixXd basis = MatrixXd::Identity(d * d, d * d);
    std::vector<std::uint8_t> open(m, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m) && basis.cols() > 0; ++mask) {
      for (int k = 0; k < m; ++k) open[k] = (mask >> k) & 1;
      MatrixXd u = shift_matrix(sg, open) * coin;
      MatrixXd residuals(d * d, basis.cols());
      for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Eigen::Map<const MatrixXd> x(basis.col(j).data(), d, d);
        MatrixXd r = u * x * u.transpose() - double(lambda) * x;
        residuals.col(j) = Eigen::Map<const Eigen::VectorXd>(r.data(), d * d);
      }
      MatrixXd coeffs =
          svd_kernel(residuals, 1e-8, &res.smallest_kept_sv, &res.largest_dropped_sv);
      basis = basis * coeffs;
    }
    auto& out = lambda == 1 ? res.basis_plus : res.basis_minus;
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      out.emplace_back(Eigen::Map<const MatrixXd>(basis.col(j).data(), d, d));
    (lambda == 1 ? res.dim_plus : res.dim_minus) = static_cast<int>(basis.cols());
  }
  return res;
}

ExpectedAttractorDims expected_attractor_dims(const WalkInstance& inst) {
  const StructureGraph& g = inst.structure;
  SpanningTree tree = spanning_tree(g);
  int k = static_cast<int>(trapped_basis(g, tree).size());
  ExpectedAttractorDims dims;
  dims.p_attractor_count = k * k + 1 + 2 * k;
  dims.dim_plus = k * k + 1 + 1;  // products plus the identity
  dims.dim_minus = 2 * k;
  bool all_degree_two = g.loop_total() == 0;
  for (const auto& row : g.adjacency())
    all_degree_two = all_degree_two && row.size() == 2;
  if (all_degree_two && is_bipartite(g)) {
    // bare even cycle: the diagonal alternating matrix oscillates with
    // period two under every configuration
    dims.has_diagonal_extra = true;
    dims.dim_minus += 1;
  }
  return dims;
}

ShiftConditionReport check_attractor_shift_elementwise(const Eigen::MatrixXcd& x,
                                                       const StateGraph& sg, double tol) {
  ShiftConditionReport rep;
  double worst = 0.0, worst_p = 0.0;
  auto track = [](double& acc, std::complex<double> a, std::complex<double> b) {
    acc = std::max(acc, std::abs(a - b));
  };
  for (int e = 0; e < sg.dim(); ++e) {
    const int ep = sg.partner(e);
    for (int f = 0; f < sg.dim(); ++f) {
      if (f == e || f == ep) continue;
      const int fp = sg.partner(f);
      track(worst, x(e, f), x(ep, f));
      track(worst, x(e, f), x(e, fp));
      track(worst, x(e, f), x(ep, fp));
    }
    if (ep != e) {
      track(worst, x(e, e), x(ep, ep));
      track(worst, x(e, ep), x(ep, e));
      track(worst_p, x(e, e), x(e, ep));
    }
  }
  rep.max_attractor_residual = worst;
  rep.max_p_equality_residual = worst_p;
  rep.attractor_ok = worst <= tol;
  rep.p_attractor_equality = worst_p <= tol;
  return rep;
}

std::vector<std::complex<double>> channel_unit_eigenvalues(const WalkInstance& inst, double pi,
                                                           double tol) {
  const StateGraph& sg = inst.state_graph;
  const int d = sg.dim();
  if (d > kAttractorDimCap)
    throw std::invalid_argument("channel_unit_eigenvalues: state dimension exceeds cap");
  const int m = inst.structure.edge_count();
  const MatrixXd coin = coin_matrix(sg);
  MatrixXd super = MatrixXd::Zero(d * d, d * d);
  std::vector<std::uint8_t> open(m, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    double w = 1.0;
    for (int k = 0; k < m; ++k) {
      open[k] = (mask >> k) & 1;
      w *= open[k] ? pi : (1.0 - pi);
    }
    MatrixXd u = shift_matrix(sg, open) * coin;
    // vec(U X U^T) = (U kron U) vec(X), column-major.
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) super(b * d + a, e * d + c) += w * u(a, c) * u(b, e);
  }
  Eigen::EigenSolver<MatrixXd> eig(super);
  std::vector<std::complex<double>> unit;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    std::complex<double> v = eig.eigenvalues()(i);
    if (std::abs(v) > 1.0 - tol) unit.push_back(v);
  }
  return unit;
}

}  // namespace qwalk
