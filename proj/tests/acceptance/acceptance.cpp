// Prints one PASS/FAIL line per acceptance criterion and exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "dipp/analysis.hpp"
#include "dipp/config.hpp"
#include "dipp/harness.hpp"
#include "dipp/pursuit.hpp"
#include "dipp/signal_model.hpp"
#include "../helpers.hpp"
#include "../lemma_fixture.hpp"
#include "../reference.hpp"

using namespace dipp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

ExperimentConfig desk(double alpha, std::vector<std::optional<double>> smnr, std::vector<std::string> topologies) {
  ExperimentConfig c;
  c.alphas = {alpha};
  c.smnr_db = std::move(smnr);
  c.topologies.clear();
  for (const auto& t : topologies) c.topologies.push_back(parse_topology_spec(t));
  c.workers = worker_count();
  return c;
}

Outcome bounds() {
  const auto rows = worked_example_bounds();
  const auto& e1 = rows[0];
  const auto& e2 = rows[1];
  const auto& e3 = rows[2];
  const auto& e4 = rows[3];
  const auto near = [](double v, double printed, double slack) { return std::abs(v - printed) <= slack * printed; };
  bool ok = e1.constants.a <= 0.50 && e1.constants.b <= 0.71 && e1.constants.c <= 7.20;
  ok = ok && e1.support_side <= 1.42 && e1.support_noise <= 15.2 && e1.signal_side <= 1.72 && e1.signal_noise <= 19.4;
  ok = ok && e3.support_noise <= 28.3 && e3.signal_noise <= 36.5;
  ok = ok && e4.support_noise <= 1.08e3 && e4.signal_noise <= 1.41e3;
  ok = ok && near(e2.support_side, 78.8, 0.02) && near(e2.support_noise, 912, 0.02) &&
       near(e2.signal_noise, 1.19e3, 0.02) && near(e2.signal_side, 95.4, 0.10);
  return {ok, "example2 signal side " + fmt("%.2f", e2.signal_side) + " vs 95.4"};
}

Outcome root() {
  const double r = convergence_root();
  return {std::abs(r - 0.231) <= 1e-3 && std::abs(a_sipp(r) - 1.0) <= 1e-9, "r = " + fmt("%.6f", r)};
}

struct Instance {
  Matrix A;
  Vector y;
};

Instance instance(std::size_t m, std::size_t n, std::size_t t, bool noisy, std::uint64_t seed) {
  Rng rng(derive_seed({seed, tag_hash("acceptance-instance")}));
  Instance out;
  out.A = gen_matrix(m, n, rng);
  const auto s = dipp::testing::random_support(n, t, rng);
  const Vector x = dipp::testing::sparse_vector(n, s, rng);
  out.y = out.A * x;
  if (noisy) out.y += gen_noise(t, m, 15.0, rng);
  return out;
}

Outcome sp_equivalence() {
  int same = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto in = instance(60, 150, 10, s % 2 == 1, s);
    same += sp_run(in.y, in.A, 10).support.indices() == reference::subspace_pursuit(in.A, in.y, 10) ? 1 : 0;
  }
  return {same == 100, std::to_string(same) + "/100 identical supports"};
}

Outcome l0_oracle() {
  int same = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto in = instance(16, 24, 2, false, 10000 + s);
    same += sipp_run(in.y, in.A, 2, SupportSet{}).support.indices() == reference::best_l0_support(in.A, in.y, 2)
                ? 1
                : 0;
  }
  return {same >= 198, std::to_string(same) + "/200 agree"};
}

Outcome lemma_suite_check() {
  int certified = 0;
  int failed = 0;
  std::string first_failure;
  for (std::uint64_t seed = 0; certified < 500; ++seed) {
    const auto c = dipp::testing::make_lemma_case(seed);
    if (!c) continue;
    ++certified;
    bool ok = true;
    for (const auto& ch : c->checks) {
      if (!ch.holds && first_failure.empty()) first_failure = ch.name + " (seed " + std::to_string(seed) + ")";
      ok = ok && ch.holds;
    }
    failed += ok ? 0 : 1;
  }
  std::string d = std::to_string(certified - failed) + "/500 certified instances hold";
  if (!first_failure.empty()) d += "; first failure: " + first_failure;
  return {failed == 0, d};
}

const GridRow& row_for(const std::vector<GridRow>& rows, const std::string& topology,
                       std::optional<double> smnr = 20.0) {
  for (const auto& r : rows) {
    const std::string t = r.topology ? r.topology->text() : "sp";
    if (t == topology && r.smnr_db == smnr) return r;
  }
  throw std::runtime_error("missing row " + topology);
}

Outcome gain_and_monotone(Outcome& monotone) {
  const auto rows = run_sweep(desk(0.16, {20.0}, {"ring:1", "ring:2", "ring:4", "ring:9"}));
  const double sp = row_for(rows, "sp").srer_db_mean;
  const double c4 = row_for(rows, "ring:4").srer_db_mean;
  const double gain = c4 - sp;

  const std::vector<std::string> order{"ring:9", "ring:4", "ring:2", "ring:1", "sp"};
  bool ok = true;
  std::string d = "ASCE";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = row_for(rows, order[i]).asce_mean;
    d += " " + order[i] + "=" + fmt("%.4f", v);
    if (i + 1 < order.size()) ok = ok && v <= row_for(rows, order[i + 1]).asce_mean + 0.02;
  }
  monotone = {ok, d};
  return {std::abs(gain - 13.0) <= 3.0,
          "SP " + fmt("%.2f", sp) + " dB, ring:4 " + fmt("%.2f", c4) + " dB, gain " + fmt("%.2f", gain) + " dB"};
}

Outcome clean_recovery() {
  auto cfg = desk(0.20, {std::nullopt}, {"ring:9"});
  cfg.algorithms = {Algorithm::dipp};
  const auto rows = run_sweep(cfg);
  const auto& r = rows.at(0);
  const double capped = static_cast<double>(r.capped_trials) / static_cast<double>(r.trials);
  return {r.asce_mean <= 0.01 && capped >= 0.95,
          "ASCE " + fmt("%.4f", r.asce_mean) + ", capped " + fmt("%.2f", 100 * capped) + "% of trials"};
}

Outcome crossover() {
  const auto rows = run_sweep(desk(0.18, {0.0, 20.0}, {"ring:4"}));
  const double g0 = row_for(rows, "ring:4", 0.0).srer_db_mean - row_for(rows, "sp", 0.0).srer_db_mean;
  const double g20 = row_for(rows, "ring:4", 20.0).srer_db_mean - row_for(rows, "sp", 20.0).srer_db_mean;
  return {g0 < g20, "gain at 0 dB " + fmt("%.2f", g0) + " dB, at 20 dB " + fmt("%.2f", g20) + " dB"};
}

Outcome watts_strogatz() {
  auto cfg = desk(0.16, {20.0}, {"watts_strogatz:3,0.3"});
  cfg.L = 100;
  cfg.matrix_realizations = 2;
  cfg.data_realizations = 5;
  const auto rows = run_sweep(cfg);
  const double sp = row_for(rows, "sp").srer_db_mean;
  const double ws = row_for(rows, "watts_strogatz:3,0.3").srer_db_mean;
  return {ws - sp >= 3.0, "SP " + fmt("%.2f", sp) + " dB, DIPP " + fmt("%.2f", ws) + " dB, gain " +
                              fmt("%.2f", ws - sp) + " dB"};
}

Outcome determinism() {
  auto cfg = desk(0.2, {10.0, std::nullopt}, {"ring:2", "watts_strogatz:2,0.5"});
  cfg.N = 300;
  cfg.J = 6;
  cfg.I = 2;
  cfg.L = 6;
  cfg.alphas = {0.2, 0.3};
  cfg.matrix_realizations = 2;
  cfg.data_realizations = 3;
  const auto text = [&](std::size_t workers) {
    cfg.workers = workers;
    std::ostringstream out;
    write_csv(out, run_sweep(cfg));
    return out.str();
  };
  const auto a = text(1);
  const auto b = text(4);
  const auto c = text(1);
  return {a == b && a == c, a == b && a == c ? "byte-identical for 1 and 4 workers" : "outputs differ"};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
  };
  Outcome monotone;
  bool have_monotone = false;
  const std::vector<Criterion> criteria{
      {"bound reproduction", bounds},
      {"convergence root", root},
      {"sp equivalence", sp_equivalence},
      {"l0 oracle equivalence", l0_oracle},
      {"lemma suite", lemma_suite_check},
      {"desk-scale gain 13 +/- 3 dB on ring:4",
       [&] {
         auto o = gain_and_monotone(monotone);
         have_monotone = true;
         return o;
       }},
      {"connectivity monotonicity",
       [&] { return have_monotone ? monotone : Outcome{false, "not evaluated"}; }},
      {"clean perfect recovery", clean_recovery},
      {"low-smnr crossover", crossover},
      {"watts-strogatz gain >= 3 dB", watts_strogatz},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
