#include "qwalk/report.hpp"

#include <cmath>
#include <fstream>

#include "qwalk/attractors.hpp"
#include "qwalk/exact.hpp"
#include "qwalk/simulator.hpp"
#include "qwalk/transport.hpp"
#include "qwalk/trapped.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

RationalMatrix as_columns(const std::vector<TrappedState>& states, int dim) {
  RationalMatrix m = RationalMatrix::Zero(dim, static_cast<Eigen::Index>(states.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = states[j].amplitudes;
  return m;
}

int reduced_expected_dimension(const WalkInstance& inst) {
  int total = 0;
  for (const auto& rc : reduce_by_sink(inst).components) total += expected_dimension(rc.graph);
  return total;
}

}  // namespace

json basis_dump(const WalkInstance& inst) {
  json out = json::array();
  for (const auto& st : sr_trapped_basis(inst)) {
    json amps = json::object();
    for (DirEdgeId e : st.support()) amps[std::to_string(e)] = st.amplitudes(e).str();
    out.push_back({{"kind", to_string(st.kind)}, {"amplitudes", std::move(amps)}});
  }
  return out;
}

json analyze(const WalkInstance& inst, const std::string& basis_path) {
  auto basis = sr_trapped_basis(inst);
  Projector p = projector(basis, inst.dim());
  Rational q = average_atp(p, inst.initial_edges);

  json report;
  report["atp"] = q.str();
  report["atp_float"] = q.to_double();
  report["trapped_dim"] = p.rank;
  report["graph"] = {{"vertices", inst.structure.vertex_count},
                     {"edges", inst.structure.edge_count()},
                     {"loops", inst.structure.loop_total()},
                     {"state_dim", inst.dim()}};
  report["initial_dim"] = inst.initial_edges.size();
  report["sink"] = inst.sink_vertices;
  if (!basis_path.empty()) {
    std::ofstream out(basis_path);
    out << basis_dump(inst).dump(2) << "\n";
    report["basis_file"] = basis_path;
  } else {
    report["basis_file"] = nullptr;
  }
  return report;
}

json verify(const WalkInstance& inst, const VerifyOptions& opt) {
  json checks = json::array();
  bool all_pass = true;
  auto add_check = [&](const std::string& name, bool pass, json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(std::move(detail));
    all_pass = all_pass && pass;
  };

  auto basis = sr_trapped_basis(inst);
  const int expected = reduced_expected_dimension(inst);
  const int rank = exact::rank<Rational>(as_columns(basis, inst.dim()));
  add_check("construction_rank", rank == static_cast<int>(basis.size()) && rank == expected,
            {{"constructed", basis.size()}, {"rank", rank}, {"expected_dimension", expected}});

  auto oracle = sr_null_space_oracle(inst);
  bool spans_equal =
      exact::same_span(as_columns(basis, inst.dim()), as_columns(oracle, inst.dim()));
  add_check("oracle_span", spans_equal,
            {{"oracle_dimension", oracle.size()}, {"basis_dimension", basis.size()}});

  const bool exhaustive = opt.exhaustive || inst.structure.edge_count() <= 10;
  EigenstateCheckOptions eopt;
  eopt.exhaustive = exhaustive;
  eopt.samples = opt.sampled_configs;
  bool eigen_ok = true;
  for (const auto& st : basis)
    eigen_ok = eigen_ok && check_shift_condition(st.amplitudes, inst.state_graph) &&
               check_coin_condition(st.amplitudes, -1, inst.state_graph) &&
               check_common_eigenstate(st.amplitudes, -1, inst, eopt);
  add_check("eigenstate_conditions", eigen_ok,
            {{"mode", exhaustive ? "exhaustive" : "sampled"},
             {"configs", exhaustive ? (std::int64_t(1) << inst.structure.edge_count())
                                    : std::int64_t(opt.sampled_configs)}});

  // Dynamics: the surviving probability must approach the trapped overlap.
  Projector p = projector(basis, inst.dim());
  const double target = 1.0 - average_atp(p, inst.initial_edges).to_double();
  SimOptions sopt;
  sopt.pi = opt.pi;
  sopt.steps = opt.sim_steps;
  double tolerance = opt.sim_tolerance;
  if (inst.structure.edge_count() > kExactEdgeCap) {
    sopt.mode = SimMode::MonteCarlo;
    sopt.samples = 400;
    tolerance = 0.05;
  }
  SimResult sim = simulate(maximally_mixed_density(inst), inst, sopt);
  const double limit = sim.trace.back();
  add_check("simulated_trace_limit", std::abs(limit - target) <= tolerance,
            {{"trace_limit", limit},
             {"trapped_overlap", target},
             {"steps_run", sim.steps_run},
             {"mode", sopt.mode == SimMode::Exact ? "exact" : "mc"},
             {"tolerance", tolerance}});

  if (inst.dim() <= kAttractorDimCap) {
    auto dims = attractor_space_dimension(inst);
    auto want = expected_attractor_dims(inst);
    add_check("attractor_space", dims.dim_plus == want.dim_plus &&
                                     dims.dim_minus == want.dim_minus,
              {{"dim_plus", dims.dim_plus},
               {"dim_minus", dims.dim_minus},
               {"expected_plus", want.dim_plus},
               {"expected_minus", want.dim_minus},
               {"smallest_kept_sv", dims.smallest_kept_sv},
               {"largest_dropped_sv", dims.largest_dropped_sv}});

    bool spectrum_ok = true;
    double worst = 0.0;
    for (auto v : channel_unit_eigenvalues(inst, opt.pi)) {
      double dist = std::min(std::abs(v - 1.0), std::abs(v + 1.0));
      worst = std::max(worst, dist);
      spectrum_ok = spectrum_ok && dist <= 1e-6;
    }
    add_check("unit_spectrum", spectrum_ok, {{"max_distance_from_pm1", worst}});
  }

  json report;
  report["pass"] = all_pass;
  report["checks"] = std::move(checks);
  return report;
}

}  // namespace qwalk
