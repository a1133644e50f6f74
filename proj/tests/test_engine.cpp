#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dipp/engine.hpp"
#include "dipp/errors.hpp"
#include "dipp/metrics.hpp"
#include "dipp/network.hpp"

using namespace dipp;

namespace {

ScenarioConfig small_config(std::size_t l = 4) {
  ScenarioConfig cfg;
  cfg.N = 200;
  cfg.M = 50;
  cfg.J = 6;
  cfg.I = 2;
  cfg.L = l;
  cfg.master_seed = 17;
  return cfg;
}

}  // namespace

TEST_CASE("single node terminates and keeps a T-sparse estimate") {
  const auto sc = gen_scenario(small_config(1));
  const auto r = dipp_run(sc, build_complete(1));
  REQUIRE(r.nodes.size() == 1);
  CHECK(r.nodes[0].support.size() == 8);
  CHECK(r.trace.rounds <= DippOptions{}.max_outer);
  CHECK(r.trace.indices_sent == 0);
}

TEST_CASE("fixed point on an easy clean problem with full connectivity") {
  auto cfg = small_config(5);
  cfg.I = 0;
  cfg.smnr_db = std::nullopt;
  cfg.M = 100;
  const auto sc = gen_scenario(cfg);
  const auto r = dipp_run(sc, build_complete(5));
  CHECK(r.trace.stop_cause == "fixed_point");
  CHECK(r.trace.rounds <= 2);
  for (std::size_t p = 0; p < 5; ++p) {
    CHECK(r.nodes[p].support == sc.nodes[p].x.support);
    CHECK(r.nodes[p].J_hat == sc.common_support);
  }
}

TEST_CASE("consensus sees exactly the in-neighbour supports") {
  const auto sc = gen_scenario(small_config(4));
  // directed: 0 -> 1, 2 -> 1, 3 -> 0, 1 -> 3, 1 -> 2
  const auto topo = NetworkTopology::from_edges(4, {{0, 1}, {2, 1}, {3, 0}, {1, 3}, {1, 2}});
  const auto states = dipp_initialize(sc, {});
  const auto out = dipp_round(states, topo, sc, 1, {});
  const std::size_t t = sc.config.sparsity();
  for (std::size_t p = 0; p < 4; ++p) {
    std::vector<SupportSet> nb;
    for (std::size_t q : topo.in_neighbors(p)) nb.push_back(states[q].support);
    const auto j = consensus(nb, states[p].support, t, sc.config.N);
    CHECK(out.nodes[p].J_hat == j);
    CHECK(out.nodes[p].side_info == expansion(j, states[p].estimate, t).T_si);
  }
  CHECK(out.indices_sent == 5 * t);
}

TEST_CASE("two nodes fuse the intersection of their supports") {
  const auto sc = gen_scenario(small_config(2));
  const auto states = dipp_initialize(sc, {});
  const auto out = dipp_round(states, build_ring(2, 1), sc, 1, {});
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(out.nodes[p].J_hat == set_intersection(states[0].support, states[1].support));
  }
}

TEST_CASE("property: residuals never increase and messages cost T per edge") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto cfg = small_config(6);
    cfg.master_seed = seed;
    cfg.M = 40;
    const auto sc = gen_scenario(cfg);
    const auto topo = build_ring(6, 1 + seed % 3);
    DippOptions opts;
    opts.exchange = seed % 2 ? ExchangeMode::sequential : ExchangeMode::synchronous;
    const auto r = dipp_run(sc, topo, opts);
    std::vector<double> last(6, 1e300);
    for (const auto& rec : r.trace.records) {
      REQUIRE(rec.residual_norm <= last[rec.node] * (1 + 1e-12));
      last[rec.node] = rec.residual_norm;
      if (rec.frozen) REQUIRE(rec.j_hat_size <= cfg.sparsity());
    }
    REQUIRE(r.trace.indices_sent == r.trace.rounds * topo.edge_count() * cfg.sparsity());
    REQUIRE(r.trace.records.size() == 6 * (r.trace.rounds + 1));
    for (const auto& n : r.nodes) REQUIRE(n.support.size() == cfg.sparsity());
  }
}

TEST_CASE("deterministic for a fixed scenario") {
  const auto sc = gen_scenario(small_config(5));
  const auto a = dipp_run(sc, build_ring(5, 2));
  const auto b = dipp_run(sc, build_ring(5, 2));
  for (std::size_t p = 0; p < 5; ++p) CHECK(a.nodes[p].estimate == b.nodes[p].estimate);
  CHECK(a.trace.stop_cause == b.trace.stop_cause);
}

TEST_CASE("starting from precomputed states equals a full run") {
  const auto sc = gen_scenario(small_config(5));
  const auto topo = build_ring(5, 1);
  const auto a = dipp_run(sc, topo);
  const auto b = dipp_run_from(sc, topo, {}, dipp_initialize(sc, {}));
  for (std::size_t p = 0; p < 5; ++p) CHECK(a.nodes[p].estimate == b.nodes[p].estimate);
}

TEST_CASE("round zero equals plain subspace pursuit") {
  const auto sc = gen_scenario(small_config(3));
  const auto states = dipp_initialize(sc, {});
  for (std::size_t p = 0; p < 3; ++p) {
    const auto sp = sp_run(sc.nodes[p].y, sc.nodes[p].A, sc.config.sparsity());
    CHECK(states[p].estimate == sp.estimate);
  }
}

TEST_CASE("frozen nodes stop running pursuits") {
  const auto sc = gen_scenario(small_config(3));
  auto states = dipp_initialize(sc, {});
  states[1].frozen = true;
  const auto out = dipp_round(states, build_complete(3), sc, 1, {});
  CHECK(out.nodes[1].estimate == states[1].estimate);
  CHECK_FALSE(out.records[1].accepted);
}

TEST_CASE("sequential exchange lets later nodes see current estimates") {
  const auto sc = gen_scenario(small_config(3));
  const auto states = dipp_initialize(sc, {});
  DippOptions opts;
  opts.exchange = ExchangeMode::sequential;
  const auto topo = build_complete(3);
  const auto out = dipp_round(states, topo, sc, 1, opts);
  std::vector<SupportSet> nb{out.nodes[0].support, out.nodes[1].support};
  CHECK(out.nodes[2].J_hat == consensus(nb, states[2].support, sc.config.sparsity(), sc.config.N));
}

TEST_CASE("size and argument errors") {
  const auto sc = gen_scenario(small_config(3));
  CHECK_THROWS_AS(dipp_run(sc, build_ring(4, 1)), InvalidArgument);
  const auto states = dipp_initialize(sc, {});
  CHECK_THROWS_AS(dipp_round(states, build_ring(3, 1), sc, 0, {}), InvalidArgument);
  std::vector<NodeState> fewer(states.begin(), states.end() - 1);
  CHECK_THROWS_AS(dipp_run_from(sc, build_ring(3, 1), {}, fewer), InvalidArgument);
  CHECK(parse_exchange_mode("sequential") == ExchangeMode::sequential);
  CHECK_THROWS_AS(parse_exchange_mode("async"), InvalidArgument);
}

TEST_CASE("fusion lowers support distortion on average") {
  auto cfg = small_config(10);
  cfg.N = 400;
  cfg.M = 64;
  cfg.J = 12;
  cfg.I = 4;
  double sp = 0.0;
  double dp = 0.0;
  for (std::uint64_t d = 0; d < 4; ++d) {
    cfg.data_realization = d;
    const auto sc = gen_scenario(cfg);
    const auto r = dipp_run(sc, build_ring(10, 4));
    for (const auto& rec : r.trace.records) {
      if (rec.round == 0) sp += rec.support_distortion;
    }
    for (std::size_t p = 0; p < 10; ++p) dp += support_distortion(sc.nodes[p].x.support, r.nodes[p].support);
  }
  CHECK(dp <= sp);
}
