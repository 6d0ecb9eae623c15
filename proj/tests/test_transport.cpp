#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qwalk/exact.hpp"
#include "qwalk/families.hpp"
#include "qwalk/transport.hpp"

using namespace qwalk;

namespace {

Projector instance_projector(const WalkInstance& inst) {
  return projector(sr_trapped_basis(inst), inst.dim());
}

void check_projector_identities(const Projector& p, const WalkInstance& inst) {
  RationalMatrix sq = p.matrix * p.matrix;
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) {
      CHECK(sq(i, j) == p.matrix(i, j));
      CHECK(p.matrix(i, j) == p.matrix(j, i));
    }
  for (DirEdgeId e : sink_subspace(inst))
    for (int j = 0; j < p.dim(); ++j) CHECK(p.matrix(e, j).is_zero());
  CHECK(exact::rank<Rational>(p.matrix) == p.rank);
}

}  // namespace

TEST_CASE("projector of an empty basis is zero") {
  Projector p = projector({}, 5);
  CHECK(p.rank == 0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(p.matrix(i, j).is_zero());
}

TEST_CASE("rank-one projector on the four-cycle state") {
  auto inst = generate({.family = "minimal_a", .L = 0});
  Projector p = instance_projector(inst);
  CHECK(p.rank == 1);
  check_projector_identities(p, inst);
  // entries are +-1/8 on the cycle block (norm squared is 8)
  for (DirEdgeId e = 0; e < 8; ++e)
    for (DirEdgeId f = 0; f < 8; ++f) CHECK(abs(p.matrix(e, f)) == Rational(1, 8));
}

TEST_CASE("two orthogonal prism states add up") {
  auto inst = generate({.family = "hollow_prism", .n = 3, .H = 2});
  auto basis = sr_trapped_basis(inst);
  REQUIRE(basis.size() == 2);
  Projector joint = instance_projector(inst);
  CHECK(joint.rank == 2);
  check_projector_identities(joint, inst);

  Projector p0 = projector({basis[0]}, inst.dim());
  Projector p1 = projector({basis[1]}, inst.dim());
  RationalMatrix sum = p0.matrix + p1.matrix;
  bool orthogonal = basis[0].amplitudes.dot(basis[1].amplitudes).is_zero();
  CHECK(orthogonal);
  for (int i = 0; i < joint.dim(); ++i)
    for (int j = 0; j < joint.dim(); ++j) CHECK(sum(i, j) == joint.matrix(i, j));
}

TEST_CASE("dependent basis is rejected by name") {
  auto inst = generate({.family = "minimal_a", .L = 0});
  auto basis = sr_trapped_basis(inst);
  auto doubled = basis;
  doubled.push_back(basis[0]);
  CHECK_THROWS_WITH_AS(projector(doubled, inst.dim()), doctest::Contains("state 1"),
                       std::invalid_argument);
}

TEST_CASE("no trapping along the way") {
  auto inst = generate({.family = "fig_eight"});
  Projector p = instance_projector(inst);
  CHECK(p.rank == 1);
  // every state supported on the initial subspace is fully transported
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    RationalVector re = RationalVector::Zero(inst.dim()), im = RationalVector::Zero(inst.dim());
    bool nonzero = false;
    for (DirEdgeId e : inst.initial_edges) {
      re(e) = Rational(coeff(rng));
      im(e) = Rational(coeff(rng));
      nonzero = nonzero || !re(e).is_zero() || !im(e).is_zero();
    }
    if (!nonzero) re(inst.initial_edges[0]) = 1;
    CHECK(atp(p, InitialState::pure(re, im)) == Rational(1));
  }
  // an odd inner cycle instead lets a connecting state reach the source
  auto odd = generate({.family = "fig_eight", .variant = 1});
  Projector podd = instance_projector(odd);
  CHECK(average_atp(podd, odd.initial_edges) < Rational(1));
}

TEST_CASE("uniform outgoing amplitudes are always fully transported") {
  for (auto spec : {FamilySpec{.family = "multi_loop", .n = 4},
                    FamilySpec{.family = "star_full", .n = 4, .L = 1},
                    FamilySpec{.family = "hollow_prism", .n = 3, .H = 2}}) {
    auto inst = generate(spec);
    Projector p = instance_projector(inst);
    for (VertexId v = 0; v < inst.structure.vertex_count; ++v) {
      if (inst.sink_vertices.count(v) || inst.state_graph.vertex_subspaces[v].empty()) continue;
      RationalVector re = RationalVector::Zero(inst.dim());
      for (DirEdgeId e : inst.state_graph.vertex_subspaces[v]) re(e) = 1;
      CHECK(atp(p, InitialState::pure(re)) == Rational(1));
    }
  }
}

TEST_CASE("a trapped state is completely trapped") {
  auto inst = generate({.family = "multi_loop", .n = 3});
  auto basis = sr_trapped_basis(inst);
  REQUIRE(basis.size() == 1);
  Projector p = instance_projector(inst);
  CHECK(atp(p, InitialState::pure(basis[0].amplitudes)) == Rational(0));
}

TEST_CASE("average ATP examples") {
  SUBCASE("loops at the initial vertex give 2/n") {
    for (int n = 2; n <= 6; ++n) {
      auto inst = generate({.family = "multi_loop", .n = n});
      CHECK(average_atp(instance_projector(inst), inst.initial_edges) == Rational(2, n));
    }
  }
  SUBCASE("star with a single initial edge") {
    auto inst = generate({.family = "star_single", .n = 3, .L = 1});
    CHECK(average_atp(instance_projector(inst), inst.initial_edges) == Rational(5, 6));
  }
  SUBCASE("triangular hollow prism") {
    auto inst = generate({.family = "hollow_prism", .n = 3, .H = 2});
    CHECK(average_atp(instance_projector(inst), inst.initial_edges) == Rational(65, 72));
  }
  SUBCASE("empty trapped basis means certain transport") {
    auto inst = make_instance(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), {2},
                              {.vertex = 0, .edges = {}});
    CHECK(average_atp(instance_projector(inst), inst.initial_edges) == Rational(1));
  }
}

TEST_CASE("transport probability stays within [0,1]") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = generate({.family = "random", .seed = static_cast<std::uint64_t>(7000 + trial)});
    Projector p = instance_projector(inst);
    check_projector_identities(p, inst);
    Rational q = average_atp(p, inst.initial_edges);
    CHECK(q >= Rational(0));
    CHECK(q <= Rational(1));
    RationalVector re(inst.dim()), im(inst.dim());
    for (int e = 0; e < inst.dim(); ++e) {
      re(e) = Rational(coeff(rng));
      im(e) = Rational(coeff(rng));
    }
    if (re.dot(re) + im.dot(im) == Rational(0)) re(0) = 1;
    Rational qp = atp(p, InitialState::pure(re, im));
    CHECK(qp >= Rational(0));
    CHECK(qp <= Rational(1));
  }
}

TEST_CASE("closed-form catalogue") {
  CHECK(closed_form(Family::MultiLoop, {.n = 3}) == Rational(2, 3));
  CHECK(closed_form(Family::StarSingle, {.n = 3, .L = 1}) == Rational(5, 6));
  CHECK(closed_form(Family::StarSingle, {.n = 4, .L = 2}) == Rational(13, 15));
  CHECK(closed_form(Family::StarFull, {.n = 4, .L = 1}) == Rational(5, 6));
  // L = 0 full-root star recovers the loops formula 2/n
  for (int n = 3; n <= 6; ++n)
    CHECK(closed_form(Family::StarFull, {.n = n, .L = 0}) ==
          closed_form(Family::MultiLoop, {.n = n}));
  CHECK(closed_form(Family::MinimalA, {.L = 0}) == Rational(7, 8));
  CHECK(closed_form(Family::MinimalB, {.L = 0}) == Rational(11, 12));
  CHECK(closed_form(Family::MinimalC, {.L = 0}) == Rational(1, 2));
  CHECK(closed_form(Family::MinimalD, {.L = 0}) == Rational(9, 10));
  CHECK(closed_form(Family::HollowPrismTri, {.H = 2}) == Rational(65, 72));
  CHECK(closed_form(Family::HollowPrismTri, {.H = 3}) == Rational(37, 40));
  CHECK_THROWS_AS(closed_form(Family::MultiLoop, {.n = 1}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form(Family::HollowPrismTri, {.H = 1}), std::invalid_argument);
}

TEST_CASE("initial state validation") {
  CHECK_THROWS_AS(InitialState::maximally_mixed({}), std::invalid_argument);
  Projector p = projector({}, 3);
  CHECK_THROWS_AS(average_atp(p, {}), std::invalid_argument);
  CHECK_THROWS_AS(atp(p, InitialState::pure(RationalVector::Zero(3))), std::invalid_argument);
}
