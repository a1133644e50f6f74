#pragma once

// Small three-node instances for the numerical inequality checks: every node
// gets a partial orthogonal matrix, node 0 fuses the supports of the other two
// and runs an instrumented pursuit with the resulting side information.

#include <optional>
#include <vector>

#include "dipp/analysis.hpp"
#include "dipp/fusion.hpp"
#include "dipp/pursuit.hpp"
#include "dipp/rng.hpp"
#include "dipp/signal_model.hpp"

namespace dipp::testing {

struct LemmaCase {
  LemmaInstance instance;
  std::vector<double> profile;
  SupportSet T_hat;
  FusionOutput fusion;
  std::vector<InequalityCheck> checks;
};

/// Returns nothing when the exact RIC of order 3T is not below 1.
inline std::optional<LemmaCase> make_lemma_case(std::uint64_t seed) {
  Rng rng(derive_seed({seed, tag_hash("lemma-case")}));
  const std::size_t t = 1 + rng.uniform_index(3);
  const std::size_t n = 10 + rng.uniform_index(5);
  const std::size_t m = 3 * t + rng.uniform_index(n - 3 * t);
  const std::size_t j = rng.uniform_index(t + 1);
  const std::optional<double> levels[] = {std::nullopt, 0.0, 5.0, 10.0, 20.0, 30.0};
  const auto smnr = levels[rng.uniform_index(6)];

  const SupportSet common = draw_subset(n, j, {}, rng);
  std::vector<Matrix> a;
  std::vector<SparseSignal> x;
  std::vector<Vector> e;
  std::vector<SippResult> sp;
  for (int p = 0; p < 3; ++p) {
    a.push_back(certifiable_matrix(m, n, rng));
    x.push_back(gen_signal(n, common, draw_subset(n, t - j, common, rng), SignalKind::gaussian, rng));
    e.push_back(gen_noise(t, m, smnr, rng));
    sp.push_back(sp_run(a.back() * x.back().values + e.back(), a.back(), t));
  }

  LemmaCase out;
  out.profile = ric_profile(a[0], 3 * t);
  if (!(out.profile[3 * t] < 1.0)) return std::nullopt;

  out.T_hat = sp[0].support;
  const SupportSet j_hat = consensus({sp[1].support, sp[2].support}, sp[0].support, t, n);
  out.fusion = expansion(j_hat, sp[0].estimate, t);
  out.instance = instrument_sipp(a[0], x[0].values, e[0], x[0].support, t, out.fusion.T_si);
  out.checks = lemma_suite(out.instance, out.profile);
  for (auto& c : fusion_checks(x[0].values, out.T_hat, out.fusion.I_hat, out.fusion.J_hat, out.fusion.T_si)) {
    out.checks.push_back(std::move(c));
  }
  return out;
}

}  // namespace dipp::testing
