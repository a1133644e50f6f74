#include "dipp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "dipp/errors.hpp"
#include "dipp/metrics.hpp"

namespace dipp {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ScenarioConfig scenario_for(const ExperimentConfig& cfg, std::size_t alpha_index,
                            std::size_t smnr_index, std::size_t m, std::size_t d) {
  ScenarioConfig s;
  s.N = cfg.N;
  s.M = cfg.measurements(alpha_index);
  s.J = cfg.J;
  s.I = cfg.I;
  s.L = cfg.L;
  s.smnr_db = cfg.smnr_db.at(smnr_index);
  s.kind = cfg.kind;
  s.master_seed = derive_seed({cfg.master_seed, tag_hash("grid"), alpha_index, smnr_index});
  s.matrix_realization = m;
  s.data_realization = d;
  return s;
}

NetworkTopology topology_for(const ExperimentConfig& cfg, std::size_t topology_index, std::size_t m) {
  Rng rng(derive_seed({cfg.master_seed, tag_hash("topology"), topology_index, m}));
  return cfg.topologies.at(topology_index).build(cfg.L, rng);
}

namespace {

struct AlgoTrial {
  double signal_energy = 0.0;
  double error_energy = 0.0;
  double asce = 0.0;
  double rounds = 0.0;
  double runtime_ms = 0.0;
};

/// Slot 0 holds SP, slot 1 + t holds DIPP on topology t.
struct UnitResult {
  std::vector<AlgoTrial> algos;
};

struct Unit {
  std::size_t smnr_index;
  std::size_t alpha_index;
  std::size_t m;
  std::size_t d;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

AlgoTrial summarize(const Scenario& s, const std::vector<NodeState>& nodes) {
  AlgoTrial a;
  double distortion = 0.0;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const auto& x = s.nodes[p].x;
    a.signal_energy += x.values.squaredNorm();
    a.error_energy += (x.values - nodes[p].estimate).squaredNorm();
    distortion += support_distortion(x.support, nodes[p].support);
  }
  a.asce = distortion / static_cast<double>(nodes.size());
  return a;
}

UnitResult run_unit(const ExperimentConfig& cfg, const Unit& u,
                    const std::vector<NetworkTopology>& graphs) {
  const Scenario s = gen_scenario(scenario_for(cfg, u.alpha_index, u.smnr_index, u.m, u.d));
  UnitResult r;
  r.algos.resize(1 + cfg.topologies.size());

  const auto t0 = Clock::now();
  std::vector<NodeState> initial = dipp_initialize(s, cfg.dipp);
  const double sp_ms = cfg.timing ? ms_since(t0) : 0.0;
  r.algos[0] = summarize(s, initial);
  r.algos[0].runtime_ms = sp_ms;

  bool want_dipp = false;
  for (Algorithm a : cfg.algorithms) want_dipp = want_dipp || a == Algorithm::dipp;
  if (!want_dipp) return r;
  for (std::size_t t = 0; t < cfg.topologies.size(); ++t) {
    const auto t1 = Clock::now();
    const DippResult res = dipp_run_from(s, graphs[t], cfg.dipp, initial);
    AlgoTrial a = summarize(s, res.nodes);
    a.rounds = static_cast<double>(res.trace.rounds);
    a.runtime_ms = cfg.timing ? sp_ms + ms_since(t1) : 0.0;
    r.algos[1 + t] = a;
  }
  return r;
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

GridRow reduce(const ExperimentConfig& cfg, std::size_t ai, std::size_t si, std::size_t slot,
               const std::vector<const UnitResult*>& trials) {
  GridRow row;
  row.experiment_id = cfg.experiment_id;
  row.algorithm = slot == 0 ? Algorithm::sp : Algorithm::dipp;
  if (slot > 0) row.topology = cfg.topologies[slot - 1];
  row.N = cfg.N;
  row.M = cfg.measurements(ai);
  row.alpha = cfg.alphas[ai];
  row.T = cfg.J + cfg.I;
  row.J = cfg.J;
  row.I = cfg.I;
  row.L = cfg.L;
  row.smnr_db = cfg.smnr_db[si];
  row.kind = cfg.kind;
  row.trials = trials.size();
  row.seed = cfg.master_seed;

  SrerAccumulator total;
  std::vector<double> srer_db;
  std::vector<double> asce_v;
  std::vector<double> rounds;
  std::vector<double> runtime;
  for (const UnitResult* u : trials) {
    const AlgoTrial& a = u->algos[slot];
    total.add_energies(a.signal_energy, a.error_energy);
    const SrerValue v = srer_from_energies(a.signal_energy, a.error_energy);
    srer_db.push_back(v.db);
    if (v.capped) ++row.capped_trials;
    asce_v.push_back(a.asce);
    rounds.push_back(a.rounds);
    runtime.push_back(a.runtime_ms);
  }
  row.srer_db_mean = total.value().db;
  row.srer_db_std = sample_std(srer_db);
  row.asce_mean = mean_of(asce_v);
  row.asce_std = sample_std(asce_v);
  row.outer_rounds_mean = mean_of(rounds);
  row.runtime_ms_mean = mean_of(runtime);
  return row;
}

}  // namespace

std::vector<GridRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  bool want_sp = false;
  bool want_dipp = false;
  for (Algorithm a : cfg.algorithms) {
    want_sp = want_sp || a == Algorithm::sp;
    want_dipp = want_dipp || a == Algorithm::dipp;
  }

  // Graphs depend on (topology, matrix realization) only.
  std::vector<std::vector<NetworkTopology>> graphs(cfg.matrix_realizations);
  if (want_dipp) {
    for (std::size_t m = 0; m < cfg.matrix_realizations; ++m) {
      for (std::size_t t = 0; t < cfg.topologies.size(); ++t) graphs[m].push_back(topology_for(cfg, t, m));
    }
  }

  std::vector<Unit> units;
  for (std::size_t si = 0; si < cfg.smnr_db.size(); ++si) {
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
      for (std::size_t m = 0; m < cfg.matrix_realizations; ++m) {
        for (std::size_t d = 0; d < cfg.data_realizations; ++d) units.push_back({si, ai, m, d});
      }
    }
  }

  std::vector<UnitResult> results(units.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        results[i] = run_unit(cfg, units[i], graphs[units[i].m]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.workers, std::max<std::size_t>(units.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<GridRow> rows;
  const std::size_t per_point = cfg.trials();
  for (std::size_t si = 0; si < cfg.smnr_db.size(); ++si) {
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
      const std::size_t base = (si * cfg.alphas.size() + ai) * per_point;
      std::vector<const UnitResult*> trials;
      for (std::size_t k = 0; k < per_point; ++k) trials.push_back(&results[base + k]);
      if (want_sp) rows.push_back(reduce(cfg, ai, si, 0, trials));
      if (want_dipp) {
        for (std::size_t t = 0; t < cfg.topologies.size(); ++t) rows.push_back(reduce(cfg, ai, si, 1 + t, trials));
      }
      spdlog::info("grid point alpha={} smnr={} done", format_real(cfg.alphas[ai]),
                   cfg.smnr_db[si] ? format_real(*cfg.smnr_db[si]) : std::string("clean"));
    }
  }
  return rows;
}

std::string csv_header() {
  return "schema_version,experiment_id,algorithm,topology,degree_or_q,p_rewire,N,M,alpha,T,J,I,L,"
         "smnr_db,signal_kind,trials,srer_db_mean,srer_db_std,asce_mean,asce_std,"
         "outer_rounds_mean,runtime_ms_mean,seed";
}

std::string csv_row(const GridRow& r) {
  std::string s;
  auto add = [&s](const std::string& field) {
    if (!s.empty()) s += ',';
    s += field;
  };
  add(std::to_string(kCsvSchemaVersion));
  add(r.experiment_id);
  add(to_string(r.algorithm));
  add(r.topology ? r.topology->name() : "none");
  add(std::to_string(r.topology ? r.topology->degree_or_q : 0));
  add(format_real(r.topology ? r.topology->p_rewire : 0.0));
  add(std::to_string(r.N));
  add(std::to_string(r.M));
  add(format_real(r.alpha));
  add(std::to_string(r.T));
  add(std::to_string(r.J));
  add(std::to_string(r.I));
  add(std::to_string(r.L));
  add(r.smnr_db ? format_real(*r.smnr_db) : "clean");
  add(to_string(r.kind));
  add(std::to_string(r.trials));
  add(format_real(r.srer_db_mean));
  add(format_real(r.srer_db_std));
  add(format_real(r.asce_mean));
  add(format_real(r.asce_std));
  add(format_real(r.outer_rounds_mean));
  add(format_real(r.runtime_ms_mean));
  add(std::to_string(r.seed));
  return s;
}

void write_csv(std::ostream& out, const std::vector<GridRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

void emit_csv(const ExperimentConfig& cfg, const std::vector<GridRow>& rows, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    write_csv(out, rows);
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw IoError("cannot open '" + cfg.output + "' for writing");
  write_csv(file, rows);
  if (!file) throw IoError("write to '" + cfg.output + "' failed");
}

std::string trace_csv_header() {
  return "round,node,residual_norm,support_distortion,j_hat_size,j_hat_correct,side_info_correct,"
         "accepted,frozen";
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << trace_csv_header() << '\n';
  for (const auto& r : trace.records) {
    out << r.round << ',' << r.node << ',' << format_real(r.residual_norm) << ','
        << format_real(r.support_distortion) << ',' << r.j_hat_size << ',' << r.j_hat_correct << ','
        << r.side_info_correct << ',' << (r.accepted ? 1 : 0) << ',' << (r.frozen ? 1 : 0) << '\n';
  }
}

void print_bound_table(std::ostream& out, const std::vector<BoundReport>& rows) {
  out << std::left << std::setw(10) << "label" << std::setw(6) << "kind" << std::right
      << std::setw(8) << "delta" << std::setw(9) << "c" << std::setw(10) << "a_co"
      << std::setw(10) << "a" << std::setw(10) << "b" << std::setw(10) << "c_val"
      << std::setw(9) << "feasible" << std::setw(13) << "supp_side" << std::setw(13)
      << "supp_noise" << std::setw(13) << "sig_side" << std::setw(13) << "sig_noise" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << (r.label.empty() ? "-" : r.label) << std::setw(6) << r.kind
        << std::right << std::setw(8) << format_real(r.constants.delta) << std::setw(9)
        << to_string(r.constants.variant) << std::setw(10)
        << (r.a_co ? format_real(*r.a_co) : std::string("-")) << std::setprecision(5)
        << std::setw(10) << r.constants.a << std::setw(10) << r.constants.b << std::setw(10)
        << r.constants.c << std::setw(9) << (r.feasible ? "yes" : "no");
    if (r.feasible) {
      out << std::setw(13) << r.support_side << std::setw(13) << r.support_noise << std::setw(13)
          << r.signal_side << std::setw(13) << r.signal_noise;
    }
    out << '\n';
  }
}

}  // namespace dipp
