#include "qwalk/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

MatrixXd grover_block(int d) {
  return MatrixXd::Constant(d, d, 2.0 / d) - MatrixXd::Identity(d, d);
}

MatrixXd coin_matrix(const StateGraph& sg) {
  MatrixXd c = MatrixXd::Zero(sg.dim(), sg.dim());
  for (const auto& sub : sg.vertex_subspaces) {
    const int d = static_cast<int>(sub.size());
    if (d == 0) continue;
    MatrixXd g = grover_block(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) c(sub[i], sub[j]) = g(i, j);
  }
  return c;
}

std::vector<int> shift_permutation(const StateGraph& sg, const std::vector<std::uint8_t>& open) {
  std::vector<int> perm(sg.dim());
  for (int e = 0; e < sg.dim(); ++e) {
    EdgeId k = sg.edges[e].support;
    perm[e] = (k != kLoopSupport && open[k]) ? sg.partner(e) : e;
  }
  return perm;
}

MatrixXd shift_matrix(const StateGraph& sg, const std::vector<std::uint8_t>& open) {
  auto perm = shift_permutation(sg, open);
  MatrixXd r = MatrixXd::Zero(sg.dim(), sg.dim());
  for (int e = 0; e < sg.dim(); ++e) r(perm[e], e) = 1.0;
  return r;
}

namespace {

// In-place convex mixture (1-pi) rho + pi S rho S for the transposition S of
// basis indices i and j; only rows/columns i and j change. S rho S swaps the
// two rows and the two columns simultaneously, so the 2x2 block is rebuilt
// from the untouched originals.
void mix_pair(MatrixXcd& m, int i, int j, double pi) {
  const double q = 1.0 - pi;
  const Eigen::RowVectorXcd ri = m.row(i), rj = m.row(j);
  const VectorXcd ci = m.col(i), cj = m.col(j);
  m.row(i) = q * ri + pi * rj;
  m.row(j) = q * rj + pi * ri;
  m.col(i) = q * ci + pi * cj;
  m.col(j) = q * cj + pi * ci;
  m(i, i) = q * ri(i) + pi * rj(j);
  m(i, j) = q * ri(j) + pi * rj(i);
  m(j, i) = q * rj(i) + pi * ri(j);
  m(j, j) = q * rj(j) + pi * ri(i);
}

void project_out_sink(MatrixXcd& m, const std::vector<DirEdgeId>& sink_edges) {
  for (DirEdgeId e : sink_edges) {
    m.row(e).setZero();
    m.col(e).setZero();
  }
}

struct StepContext {
  MatrixXd coin;
  std::vector<DirEdgeId> sink_edges;
};

StepContext make_context(const WalkInstance& inst) {
  return {coin_matrix(inst.state_graph), sink_subspace(inst)};
}

MatrixXcd exact_step_with(const StepContext& ctx, const MatrixXcd& rho, const WalkInstance& inst,
                          double pi) {
  MatrixXcd y = ctx.coin * rho * ctx.coin;
  for (EdgeId k = 0; k < inst.structure.edge_count(); ++k) mix_pair(y, 2 * k, 2 * k + 1, pi);
  project_out_sink(y, ctx.sink_edges);
  return y;
}

MatrixXcd apply_perm_conjugation(const MatrixXcd& y, const std::vector<int>& perm) {
  MatrixXcd out(y.rows(), y.cols());
  for (int a = 0; a < y.rows(); ++a)
    for (int b = 0; b < y.cols(); ++b) out(perm[a], perm[b]) = y(a, b);
  return out;
}

}  // namespace

MatrixXcd step_exact(const MatrixXcd& rho, const WalkInstance& inst, double pi) {
  if (inst.structure.edge_count() > kExactEdgeCap)
    throw std::invalid_argument(
        "step_exact: graph exceeds the exact-mode edge cap (" + std::to_string(kExactEdgeCap) +
        "); use Monte Carlo mode");
  return exact_step_with(make_context(inst), rho, inst, pi);
}

MatrixXcd step_config_sum(const MatrixXcd& rho, const WalkInstance& inst, double pi) {
  const int m = inst.structure.edge_count();
  if (m > kExactEdgeCap)
    throw std::invalid_argument("step_config_sum: graph exceeds the exact-mode edge cap");
  StepContext ctx = make_context(inst);
  MatrixXcd y = ctx.coin * rho * ctx.coin;
  MatrixXcd acc = MatrixXcd::Zero(rho.rows(), rho.cols());
  std::vector<std::uint8_t> open(m, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    double w = 1.0;
    for (int k = 0; k < m; ++k) {
      open[k] = (mask >> k) & 1;
      w *= open[k] ? pi : (1.0 - pi);
    }
    acc += w * apply_perm_conjugation(y, shift_permutation(inst.state_graph, open));
  }
  project_out_sink(acc, ctx.sink_edges);
  return acc;
}

MatrixXcd step_mc(const MatrixXcd& rho, const WalkInstance& inst, double pi,
                  std::mt19937_64& rng) {
  StepContext ctx = make_context(inst);
  std::bernoulli_distribution coin_flip(pi);
  std::vector<std::uint8_t> open(inst.structure.edge_count());
  for (auto& o : open) o = coin_flip(rng) ? 1 : 0;
  MatrixXcd y = ctx.coin * rho * ctx.coin;
  y = apply_perm_conjugation(y, shift_permutation(inst.state_graph, open));
  project_out_sink(y, ctx.sink_edges);
  return y;
}

SimResult simulate(const MatrixXcd& rho0, const WalkInstance& inst, const SimOptions& opt) {
  if (opt.steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
  SimResult res;
  if (opt.mode == SimMode::Exact) {
    if (inst.structure.edge_count() > kExactEdgeCap)
      throw std::invalid_argument("simulate: graph exceeds the exact-mode edge cap; use mc mode");
    StepContext ctx = make_context(inst);
    MatrixXcd rho = rho0;
    res.trace.push_back(rho.trace().real());
    for (int t = 1; t <= opt.steps; ++t) {
      rho = exact_step_with(ctx, rho, inst, opt.pi);
      res.trace.push_back(rho.trace().real());
      if (t >= opt.stop_window &&
          std::abs(res.trace[t - opt.stop_window] - res.trace[t]) < opt.stop_eps) {
        res.stopped_early = true;
        break;
      }
    }
    res.steps_run = static_cast<int>(res.trace.size()) - 1;
    res.trace_err.assign(res.trace.size(), 0.0);
    res.final_rho = rho;
    return res;
  }

  // Monte Carlo: average single-configuration trajectories over samples.
  const int n = static_cast<int>(rho0.rows());
  StepContext ctx = make_context(inst);
  std::vector<double> sum(opt.steps + 1, 0.0), sumsq(opt.steps + 1, 0.0);
  MatrixXcd final_mean = MatrixXcd::Zero(n, n);
  std::bernoulli_distribution coin_flip(opt.pi);
  std::vector<std::uint8_t> open(inst.structure.edge_count());
  for (int s = 0; s < opt.samples; ++s) {
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(s));
    MatrixXcd rho = rho0;
    for (int t = 0; t <= opt.steps; ++t) {
      double tr = rho.trace().real();
      sum[t] += tr;
      sumsq[t] += tr * tr;
      if (t == opt.steps) break;
      for (auto& o : open) o = coin_flip(rng) ? 1 : 0;
      MatrixXcd y = ctx.coin * rho * ctx.coin;
      rho = apply_perm_conjugation(y, shift_permutation(inst.state_graph, open));
      project_out_sink(rho, ctx.sink_edges);
    }
    final_mean += rho / static_cast<double>(opt.samples);
  }
  res.trace.resize(opt.steps + 1);
  res.trace_err.resize(opt.steps + 1);
  for (int t = 0; t <= opt.steps; ++t) {
    double mean = sum[t] / opt.samples;
    res.trace[t] = mean;
    double var = std::max(0.0, sumsq[t] / opt.samples - mean * mean);
    res.trace_err[t] = opt.samples > 1 ? std::sqrt(var / (opt.samples - 1)) : 0.0;
  }
  res.steps_run = opt.steps;
  res.final_rho = final_mean;
  return res;
}

MatrixXcd maximally_mixed_density(const WalkInstance& inst) {
  MatrixXcd rho = MatrixXcd::Zero(inst.dim(), inst.dim());
  const double w = 1.0 / static_cast<double>(inst.initial_edges.size());
  for (DirEdgeId e : inst.initial_edges) rho(e, e) = w;
  return rho;
}

MatrixXcd pure_density(const VectorXcd& psi) {
  double n2 = psi.squaredNorm();
  if (n2 <= 0) throw std::invalid_argument("pure_density: zero state");
  return psi * psi.adjoint() / n2;
}

namespace {

std::complex<double> hs_inner(const MatrixXcd& a, const MatrixXcd& b) {
  // Tr(a^dag b)
  return (a.adjoint() * b).trace();
}

}  // namespace

std::vector<Attractor> attractor_basis(const WalkInstance& inst, bool with_sink) {
  std::vector<std::pair<Eigen::VectorXd, int>> eigstates;  // (amplitudes, lambda)
  if (with_sink) {
    for (const auto& st : sr_trapped_basis(inst)) {
      Eigen::VectorXd v(st.amplitudes.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = st.amplitudes(i).to_double();
      eigstates.emplace_back(std::move(v), -1);
    }
  } else {
    SpanningTree tree = spanning_tree(inst.structure);
    for (const auto& st : trapped_basis(inst.structure, tree)) {
      Eigen::VectorXd v(st.amplitudes.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = st.amplitudes(i).to_double();
      eigstates.emplace_back(std::move(v), -1);
    }
    eigstates.emplace_back(Eigen::VectorXd::Ones(inst.dim()), 1);
  }
  for (auto& [v, lambda] : eigstates) v.normalize();

  std::vector<Attractor> raw;
  for (const auto& [va, la] : eigstates)
    for (const auto& [vb, lb] : eigstates)
      raw.push_back({(va * vb.transpose()).cast<std::complex<double>>(), la * lb});
  if (!with_sink)
    raw.push_back({MatrixXcd::Identity(inst.dim(), inst.dim()), 1});

  // Gram-Schmidt inside each eigenvalue sector (two passes for stability).
  std::vector<Attractor> basis;
  for (int lambda : {1, -1}) {
    std::vector<const Attractor*> sector;
    for (const auto& a : raw)
      if (a.lambda == lambda) sector.push_back(&a);
    for (const Attractor* a : sector) {
      MatrixXcd x = a->X;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis)
          if (b.lambda == lambda) x -= hs_inner(b.X, x) * b.X;
      double nrm = std::sqrt(std::abs(hs_inner(x, x)));
      if (nrm > 1e-10) basis.push_back({x / nrm, lambda});
    }
  }
  return basis;
}

MatrixXcd asymptotic_state(const MatrixXcd& rho0, const std::vector<Attractor>& basis, long t) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      std::complex<double> g = hs_inner(basis[i].X, basis[j].X);
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-12)
        throw std::invalid_argument("asymptotic_state: attractor basis is not orthonormal");
    }
  MatrixXcd out = MatrixXcd::Zero(rho0.rows(), rho0.cols());
  for (const auto& a : basis) {
    std::complex<double> c = hs_inner(a.X, rho0);  // Tr(rho0 X^dag) = Tr(X^dag rho0)
    double phase = (a.lambda == 1 || t % 2 == 0) ? 1.0 : -1.0;
    out += phase * c * a.X;
  }
  return out;
}

}  // namespace qwalk
