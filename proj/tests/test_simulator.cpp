#include <doctest.h>

#include <complex>
#include <random>
#include <stdexcept>

#include "qwalk/families.hpp"
#include "qwalk/simulator.hpp"
#include "qwalk/transport.hpp"

using namespace qwalk;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace {

MatrixXcd random_density(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

VectorXcd to_cvec(const RationalVector& v) {
  VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

double frob(const MatrixXcd& m) { return m.norm(); }

}  // namespace

TEST_CASE("grover blocks are involutive reflections fixing the uniform vector") {
  for (int d : {1, 2, 3, 5}) {
    MatrixXd g = grover_block(d);
    CHECK((g * g - MatrixXd::Identity(d, d)).norm() < 1e-12);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
    CHECK((g * ones - ones).norm() < 1e-12);
  }
}

TEST_CASE("shift permutations") {
  auto inst = generate({.family = "multi_loop", .n = 3});
  const auto& sg = inst.state_graph;
  SUBCASE("all open swaps every pair") {
    auto perm = shift_permutation(sg, {1});
    CHECK(perm[0] == 1);
    CHECK(perm[1] == 0);
    CHECK(perm[2] == 2);  // loops stay
    CHECK(perm[3] == 3);
  }
  SUBCASE("all closed is the identity") {
    auto perm = shift_permutation(sg, {0});
    for (int e = 0; e < sg.dim(); ++e) CHECK(perm[e] == e);
  }
}

TEST_CASE("walk operators are unitary involutions") {
  std::mt19937_64 rng(3);
  auto inst = generate({.family = "minimal_d", .L = 1});
  const auto& sg = inst.state_graph;
  MatrixXd c = coin_matrix(sg);
  MatrixXd id = MatrixXd::Identity(sg.dim(), sg.dim());
  CHECK((c * c - id).norm() < 1e-12);
  std::bernoulli_distribution half(0.5);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<std::uint8_t> open(inst.structure.edge_count());
    for (auto& o : open) o = half(rng);
    MatrixXd r = shift_matrix(sg, open);
    MatrixXd u = r * c;
    CHECK((r * r - id).norm() < 1e-12);
    CHECK((u * u.transpose() - id).norm() < 1e-12);
  }
}

TEST_CASE("edge-factorized exact step equals the configuration sum") {
  std::mt19937_64 rng(19);
  for (auto spec : {FamilySpec{.family = "multi_loop", .n = 3},
                    FamilySpec{.family = "minimal_c", .L = 1},
                    FamilySpec{.family = "minimal_b", .L = 0}}) {
    auto inst = generate(spec);
    for (double pi : {0.3, 0.7}) {
      MatrixXcd rho = random_density(rng, inst.dim());
      CHECK(frob(step_exact(rho, inst, pi) - step_config_sum(rho, inst, pi)) < 1e-12);
    }
  }
}

TEST_CASE("exact step conserves trace without a sink") {
  auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  WalkInstance inst = make_instance(g, {}, {.vertex = 0, .edges = {}});
  std::mt19937_64 rng(11);
  MatrixXcd rho = random_density(rng, inst.dim());
  for (int t = 0; t < 20; ++t) rho = step_exact(rho, inst, 0.4);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trapped pure state never leaks into the sink") {
  auto inst = generate({.family = "multi_loop", .n = 3});
  auto basis = sr_trapped_basis(inst);
  REQUIRE(basis.size() == 1);
  MatrixXcd rho = pure_density(to_cvec(basis[0].amplitudes));
  for (int t = 0; t < 50; ++t) {
    rho = step_exact(rho, inst, 0.5);
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("the uniform state is a fixed point of every configuration") {
  auto g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  WalkInstance inst = make_instance(g, {}, {.vertex = 0, .edges = {}});
  MatrixXcd rho = pure_density(VectorXcd::Ones(inst.dim()));
  MatrixXcd next = step_exact(rho, inst, 0.5);
  CHECK(frob(next - rho) < 1e-12);
}

TEST_CASE("pi = 1 reproduces the unpercolated walk") {
  auto inst = generate({.family = "minimal_a", .L = 0});
  std::mt19937_64 rng(4);
  MatrixXcd rho = random_density(rng, inst.dim());
  MatrixXd c = coin_matrix(inst.state_graph);
  std::vector<std::uint8_t> all_open(inst.structure.edge_count(), 1);
  MatrixXd u = shift_matrix(inst.state_graph, all_open) * c;
  MatrixXcd direct = u * rho * u.transpose();
  for (DirEdgeId e : sink_subspace(inst)) {
    direct.row(e).setZero();
    direct.col(e).setZero();
  }
  CHECK(frob(step_exact(rho, inst, 1.0) - direct) < 1e-12);
}

TEST_CASE("monte carlo stepping is deterministic under a seed") {
  auto inst = generate({.family = "minimal_c", .L = 1});
  SimOptions opt;
  opt.mode = SimMode::MonteCarlo;
  opt.steps = 40;
  opt.samples = 3;
  opt.seed = 99;
  auto r1 = simulate(maximally_mixed_density(inst), inst, opt);
  auto r2 = simulate(maximally_mixed_density(inst), inst, opt);
  CHECK(r1.trace == r2.trace);
}

TEST_CASE("monte carlo agrees with the exact trajectory") {
  auto inst = generate({.family = "multi_loop", .n = 3});
  MatrixXcd rho0 = maximally_mixed_density(inst);
  SimOptions ex;
  ex.steps = 40;
  ex.stop_window = 1000;  // keep the whole trajectory
  auto exact_run = simulate(rho0, inst, ex);
  SimOptions mc;
  mc.mode = SimMode::MonteCarlo;
  mc.steps = 40;
  mc.samples = 10000;
  mc.seed = 2024;
  auto mc_run = simulate(rho0, inst, mc);
  for (int t = 0; t <= 40; ++t) {
    double sigma = std::max(mc_run.trace_err[t], 1e-4);
    CHECK(std::abs(mc_run.trace[t] - exact_run.trace[t]) < 3 * sigma);
  }
}

TEST_CASE("simulated trace limits") {
  SUBCASE("loops instance traps one third") {
    auto inst = generate({.family = "multi_loop", .n = 3});
    auto res = simulate(maximally_mixed_density(inst), inst, {});
    CHECK(res.trace.back() == doctest::Approx(1.0 / 3).epsilon(1e-3));
    for (std::size_t t = 1; t < res.trace.size(); ++t)
      CHECK(res.trace[t] <= res.trace[t - 1] + 1e-12);
  }
  SUBCASE("crossing graph transports everything") {
    auto inst = generate({.family = "fig_eight"});
    auto res = simulate(maximally_mixed_density(inst), inst, {});
    CHECK(res.trace.back() == doctest::Approx(0.0).epsilon(1e-3));
  }
  SUBCASE("sinked triangle transports everything") {
    auto inst = make_instance(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), {2},
                              {.vertex = 0, .edges = {}});
    auto res = simulate(maximally_mixed_density(inst), inst, {});
    CHECK(res.trace.back() == doctest::Approx(0.0).epsilon(1e-3));
  }
}

TEST_CASE("exact cap is enforced") {
  auto inst = generate({.family = "stacked_prism", .n = 4, .H = 3});  // 28 edges
  REQUIRE(inst.structure.edge_count() > kExactEdgeCap);
  MatrixXcd rho = maximally_mixed_density(inst);
  CHECK_THROWS_WITH_AS(step_exact(rho, inst, 0.5), doctest::Contains("Monte Carlo"),
                       std::invalid_argument);
  SimOptions opt;
  opt.mode = SimMode::MonteCarlo;
  opt.steps = 5;
  CHECK_NOTHROW(simulate(rho, inst, opt));
}

TEST_CASE("asymptotic state reconstruction") {
  SUBCASE("sinked dynamics become stationary at the trapped overlap") {
    auto inst = generate({.family = "multi_loop", .n = 3});
    auto basis = attractor_basis(inst, true);
    MatrixXcd rho0 = maximally_mixed_density(inst);
    SimOptions opt;
    opt.steps = 400;
    opt.stop_window = 1000;
    auto run = simulate(rho0, inst, opt);
    MatrixXcd as_even = asymptotic_state(rho0, basis, 400);
    MatrixXcd as_odd = asymptotic_state(rho0, basis, 401);
    CHECK(frob(as_even - as_odd) < 1e-10);  // stationary when sinked
    CHECK(frob(run.final_rho - as_even) < 1e-6);
    CHECK(as_even.trace().real() == doctest::Approx(1.0 / 3).epsilon(1e-9));
  }
  SUBCASE("sink-free four-cycle keeps a period-two component") {
    auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    WalkInstance inst = make_instance(g, {}, {.vertex = 0, .edges = {}});
    auto basis = attractor_basis(inst, false);
    // mix the +1 and -1 common eigenstates so cross terms survive
    auto trapped = sr_trapped_basis(inst);
    REQUIRE(trapped.size() == 1);
    VectorXcd psi = to_cvec(trapped[0].amplitudes);
    psi += VectorXcd::Ones(inst.dim());
    MatrixXcd rho0 = pure_density(psi);
    SimOptions opt;
    opt.steps = 300;
    opt.stop_window = 1000;
    auto run = simulate(rho0, inst, opt);
    MatrixXcd as_t = asymptotic_state(rho0, basis, 300);
    CHECK(frob(run.final_rho - as_t) < 1e-6);
    CHECK(frob(asymptotic_state(rho0, basis, 300) - asymptotic_state(rho0, basis, 301)) > 0.01);
  }
  SUBCASE("non-orthonormal bases are rejected") {
    auto inst = generate({.family = "multi_loop", .n = 3});
    auto basis = attractor_basis(inst, true);
    REQUIRE(!basis.empty());
    basis[0].X *= 2.0;
    CHECK_THROWS_AS(asymptotic_state(maximally_mixed_density(inst), basis, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("the trace limit does not depend on pi") {
  auto inst = generate({.family = "minimal_c", .L = 1});
  Projector p = projector(sr_trapped_basis(inst), inst.dim());
  double target = 1.0 - average_atp(p, inst.initial_edges).to_double();
  for (double pi : {0.2, 0.5, 0.8}) {
    SimOptions opt;
    opt.pi = pi;
    auto res = simulate(maximally_mixed_density(inst), inst, opt);
    CHECK(res.trace.back() == doctest::Approx(target).epsilon(1e-3));
  }
}
