#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qwalk/families.hpp"
#include "qwalk/report.hpp"
#include "qwalk/transport.hpp"

using namespace qwalk;

TEST_CASE("generators produce valid instances") {
  std::vector<FamilySpec> specs = {
      {.family = "multi_loop", .n = 4},
      {.family = "star_single", .n = 5, .L = 2},
      {.family = "star_single", .n = 4, .L = 0},
      {.family = "star_full", .n = 4, .L = 1},
      {.family = "minimal_a", .L = 2},
      {.family = "minimal_b", .L = 0},
      {.family = "minimal_c", .L = 0},
      {.family = "minimal_d", .L = 3},
      {.family = "fig_eight"},
      {.family = "fig_eight", .variant = 1},
      {.family = "hollow_prism", .n = 4, .H = 3},
      {.family = "stacked_prism", .n = 3, .H = 4},
      {.family = "sink_placement", .L = 2, .variant = 1},
  };
  for (const auto& spec : specs) {
    CAPTURE(spec.family);
    auto inst = generate(spec);
    CHECK(validate(inst.structure).empty());
    CHECK(!inst.initial_edges.empty());
  }
}

TEST_CASE("generator counting") {
  auto ml = generate({.family = "multi_loop", .n = 4});
  CHECK(ml.structure.vertex_count == 2);
  CHECK(ml.structure.edge_count() == 1);
  CHECK(ml.structure.loops_at(0) == 3);
  CHECK(ml.sink_vertices == std::set<VertexId>{1});

  auto hp = generate({.family = "hollow_prism", .n = 3, .H = 2});
  CHECK(hp.structure.vertex_count == 9);    // n(H+1)
  CHECK(hp.structure.edge_count() == 12);   // 2n + nH
  CHECK(hp.sink_vertices.size() == 1);

  auto sp = generate({.family = "stacked_prism", .n = 3, .H = 2});
  CHECK(sp.structure.vertex_count == 9);
  CHECK(sp.structure.edge_count() == 15);   // the H-1 inner rings add n each

  auto f8 = generate({.family = "fig_eight"});
  CHECK(f8.initial_edges.size() == 4);

  auto star = generate({.family = "star_single", .n = 4, .L = 2});
  // root, 3 looped branches of 2 vertices, sink chain of 2 vertices
  CHECK(star.structure.vertex_count == 9);
  CHECK(star.structure.loop_total() == 3);
  CHECK(star.initial_edges.size() == 1);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(generate({.family = "multi_loop", .n = 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({.family = "star_full", .n = 2}), std::invalid_argument);
  CHECK_THROWS_AS(generate({.family = "hollow_prism", .n = 3, .H = 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({.family = "no_such_family"}), std::invalid_argument);
  FamilySpec bad_height{.family = "hollow_prism", .n = 3, .H = 3};
  bad_height.sink_height = 3;  // must be strictly inside
  CHECK_THROWS_AS(generate(bad_height), std::invalid_argument);
}

TEST_CASE("random graphs stay within the requested bounds") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    StructureGraph g = random_connected_graph(rng, 8, 3);
    CHECK(validate(g).empty());
    CHECK(g.vertex_count <= 8);
    for (VertexId v = 0; v < g.vertex_count; ++v) CHECK(g.loops_at(v) <= 3);
  }
}

TEST_CASE("analyze reports exact transport") {
  auto report = analyze(generate({.family = "multi_loop", .n = 3}));
  CHECK(report["atp"] == "2/3");
  CHECK(report["trapped_dim"] == 1);
  CHECK(report["atp_float"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(report["basis_file"].is_null());

  CHECK(analyze(generate({.family = "fig_eight"}))["atp"] == "1");
  CHECK(analyze(generate({.family = "minimal_b", .L = 2}))["atp"] == "27/28");
}

TEST_CASE("verify passes on healthy instances") {
  VerifyOptions fast;
  fast.sim_steps = 4000;
  for (auto spec : {FamilySpec{.family = "multi_loop", .n = 3},
                    FamilySpec{.family = "star_full", .n = 4, .L = 1},
                    FamilySpec{.family = "random", .seed = 1234}}) {
    CAPTURE(spec.family);
    auto report = verify(generate(spec), fast);
    CHECK(report["pass"].get<bool>());
  }
}

TEST_CASE("verify cross-checks the simulated limit") {
  auto report = verify(generate({.family = "multi_loop", .n = 3}), {});
  bool found = false;
  for (const auto& check : report["checks"]) {
    if (check["name"] == "simulated_trace_limit") {
      found = true;
      CHECK(check["pass"].get<bool>());
      CHECK(check["trace_limit"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-3));
    }
  }
  CHECK(found);
}

TEST_CASE("basis dump lists exact amplitudes") {
  auto dump = basis_dump(generate({.family = "multi_loop", .n = 3}));
  REQUIRE(dump.size() == 1);
  CHECK(dump[0]["kind"] == "C");
  const auto& amps = dump[0]["amplitudes"];
  REQUIRE(amps.size() == 2);
  std::multiset<std::string> values;
  for (const auto& [key, val] : amps.items()) values.insert(val.get<std::string>());
  CHECK(values == std::multiset<std::string>{"-1", "1"});
}
