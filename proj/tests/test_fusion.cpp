#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dipp/engine.hpp"
#include "dipp/errors.hpp"
#include "dipp/fusion.hpp"
#include "dipp/network.hpp"
#include "helpers.hpp"

using namespace dipp;
using dipp::testing::random_support;

TEST_CASE("consensus examples") {
  const SupportSet own{1, 4, 7};
  CHECK(consensus({SupportSet{1, 4, 9}}, own, 3, 10) == SupportSet{1, 4});
  CHECK(consensus({SupportSet{0, 2, 3}}, own, 3, 10).empty());
  CHECK(consensus({}, own, 3, 10).empty());
  // neighbours agreeing among themselves count too
  CHECK(consensus({SupportSet{0, 2, 3}, SupportSet{0, 5, 6}}, own, 3, 10) == SupportSet{0});
}

TEST_CASE("consensus truncation rules") {
  const SupportSet own{0, 1, 2};
  const std::vector<SupportSet> nb{SupportSet{0, 1, 2}, SupportSet{2, 5, 6}, SupportSet{5, 6, 9}};
  // votes: 0:2 1:2 2:3 5:2 6:2
  CHECK(consensus(nb, own, 3, 10, TruncationRule::lexicographic) == SupportSet{0, 1, 2});
  CHECK(consensus(nb, own, 3, 10, TruncationRule::vote_count) == SupportSet{0, 1, 2});
  const std::vector<SupportSet> nb2{SupportSet{5, 6, 8}, SupportSet{6, 8, 9}, SupportSet{0, 6, 8}};
  // votes: 0:2 6:3 8:3 5:1 9:1
  CHECK(consensus(nb2, own, 2, 10, TruncationRule::lexicographic) == SupportSet{0, 6});
  CHECK(consensus(nb2, own, 2, 10, TruncationRule::vote_count) == SupportSet{6, 8});
}

TEST_CASE("property: two-node consensus is the pairwise intersection") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 10 + rng.uniform_index(40);
    const std::size_t t = 1 + rng.uniform_index(8);
    const auto a = random_support(n, t, rng);
    const auto b = random_support(n, t, rng);
    REQUIRE(consensus({b}, a, t, n) == set_intersection(a, b));
  }
}

TEST_CASE("property: consensus against a brute-force vote count, order invariant") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 30;
    const std::size_t t = 1 + rng.uniform_index(6);
    const auto own = random_support(n, t, rng);
    std::vector<SupportSet> nb;
    const std::size_t deg = rng.uniform_index(5);
    for (std::size_t i = 0; i < deg; ++i) nb.push_back(random_support(n, t, rng));
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < n; ++i) {
      int v = own.contains(i) ? 1 : 0;
      for (const auto& s : nb) v += s.contains(i) ? 1 : 0;
      if (v >= 2) expected.push_back(i);
    }
    if (expected.size() > t) expected.resize(t);
    const auto got = consensus(nb, own, t, n);
    REQUIRE(got.indices() == expected);
    std::reverse(nb.begin(), nb.end());
    REQUIRE(consensus(nb, own, t, n) == got);
    REQUIRE(got.size() <= t);
  }
}

TEST_CASE("expansion examples") {
  Vector x(5);
  x << 9, 0, 5, 3, 1;
  const auto out = expansion(SupportSet{0}, x, 3);
  CHECK(out.J_hat == SupportSet{0});
  CHECK(out.I_hat == SupportSet{2, 3});
  CHECK(out.T_si == SupportSet{0, 2, 3});

  const auto empty = expansion(SupportSet{}, x, 2);
  CHECK(empty.T_si == SupportSet{0, 2});

  const auto full = expansion(SupportSet{1, 4}, x, 2);
  CHECK(full.I_hat.empty());
  CHECK(full.T_si == SupportSet{1, 4});

  // J_hat holding the strongest entries still yields exactly T indices
  const auto overlap = expansion(SupportSet{0, 2}, x, 3);
  CHECK(overlap.T_si == SupportSet{0, 2, 3});

  CHECK_THROWS_AS(expansion(SupportSet{0, 1, 2}, x, 2), InvalidArgument);
}

TEST_CASE("property: expansion output is T indices containing J_hat") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 40;
    const std::size_t t = 1 + rng.uniform_index(10);
    const auto j = random_support(n, rng.uniform_index(t + 1), rng);
    const Vector x = dipp::testing::gaussian_vector(n, rng);
    const auto out = expansion(j, x, t);
    REQUIRE(out.T_si.size() == t);
    REQUIRE(set_difference(j, out.T_si).empty());
    REQUIRE(set_intersection(j, out.I_hat).empty());
    REQUIRE(set_union(j, out.I_hat) == out.T_si);
    // I_hat entries dominate everything outside T_si
    double min_in = 1e300;
    for (std::size_t i : out.I_hat) min_in = std::min(min_in, std::abs(x[static_cast<Eigen::Index>(i)]));
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.T_si.contains(i) && !out.I_hat.empty()) REQUIRE(std::abs(x[static_cast<Eigen::Index>(i)]) <= min_in);
    }
  }
}

TEST_CASE("assumption checks") {
  Vector x(6);
  x << 3, 0, 1, 0, 2, 0;
  const SupportSet truth{0, 2, 4};
  // T_hat = {0, 1, 2}; I_hat = {0}: discarded {1, 2} energy 1; J_hat = {0} energy 9
  const auto r = assumption_checks(x, truth, SupportSet{0, 1, 2}, SupportSet{0}, SupportSet{0});
  CHECK(r.energy_common == doctest::Approx(9.0));
  CHECK(r.energy_discarded == doctest::Approx(1.0));
  CHECK(r.assumption3);
  REQUIRE(r.j_hat_precision.has_value());
  CHECK(*r.j_hat_precision == doctest::Approx(1.0));
  CHECK(r.t_hat_precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.assumption2);

  const auto bad = assumption_checks(x, truth, SupportSet{0, 1, 2}, SupportSet{1}, SupportSet{1});
  CHECK(bad.energy_common == doctest::Approx(0.0));
  CHECK(bad.energy_discarded == doctest::Approx(10.0));
  CHECK_FALSE(bad.assumption3);
  CHECK(*bad.j_hat_precision == doctest::Approx(0.0));
  CHECK_FALSE(bad.assumption2);

  const auto none = assumption_checks(x, truth, SupportSet{0, 1, 2}, SupportSet{0, 1, 2}, SupportSet{});
  CHECK_FALSE(none.j_hat_precision.has_value());
  CHECK(none.assumption2);
  CHECK(none.assumption3);
}

TEST_CASE("common-energy condition holds in most realizations at alpha 0.2") {
  int holds = 0;
  int total = 0;
  for (std::uint64_t d = 0; d < 5; ++d) {
    ScenarioConfig cfg;
    cfg.M = 200;
    cfg.data_realization = d;
    cfg.master_seed = 77;
    const auto sc = gen_scenario(cfg);
    const auto topo = build_ring(cfg.L, 4);
    const auto states = dipp_initialize(sc, {});
    for (std::size_t p = 0; p < cfg.L; ++p) {
      std::vector<SupportSet> nb;
      for (std::size_t q : topo.in_neighbors(p)) nb.push_back(states[q].support);
      const auto j = consensus(nb, states[p].support, cfg.sparsity(), cfg.N);
      const auto f = expansion(j, states[p].estimate, cfg.sparsity());
      const auto& node = sc.nodes[p];
      const auto rep = assumption_checks(node.x.values, node.x.support, states[p].support, f.I_hat, f.J_hat);
      holds += rep.assumption3 ? 1 : 0;
      ++total;
    }
  }
  CHECK(holds * 2 > total);
}
