// Command-line driver: scenario dumps, single runs, sweeps, bound tables and
// topology export.

#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dipp/analysis.hpp"
#include "dipp/config.hpp"
#include "dipp/errors.hpp"
#include "dipp/harness.hpp"
#include "dipp/scenario_io.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// Flags that mirror configuration keys. Every flag that was given becomes an
/// entry layered over the file (and preset) values.
struct Overrides {
  std::string config_path;
  std::string preset;
  std::vector<std::pair<std::string, std::string>> entries;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto* slot = &storage_.emplace_back();
    app->add_option(flag, *slot, help)->each([this, key](const std::string& v) {
      entries.emplace_back(key, v);
    });
  }

 private:
  std::deque<std::string> storage_;
};

void add_experiment_flags(CLI::App* app, Overrides& o) {
  app->add_option("-c,--config", o.config_path, "configuration file");
  app->add_option("--preset", o.preset, "start from a named preset: desk, binary-rings, gaussian-rings, clean-rings, smnr-rings, small-world");
  o.add(app, "--N", "scenario.N", "signal dimension");
  o.add(app, "--J", "scenario.J", "common support size");
  o.add(app, "--I", "scenario.I", "individual support size");
  o.add(app, "--L", "scenario.L", "number of nodes");
  o.add(app, "--signal-kind", "scenario.signal_kind", "gaussian or binary");
  o.add(app, "--alpha", "sweep.alpha", "fractions of measurements, e.g. '0.12 0.16'");
  o.add(app, "--alpha-range", "sweep.alpha_range", "'from to step'");
  o.add(app, "--smnr-db", "sweep.smnr_db", "SMNR values in dB or 'clean'");
  o.add(app, "--topology", "sweep.topology", "ring:d, complete, watts_strogatz:q,p (';' separated)");
  o.add(app, "--algorithms", "sweep.algorithms", "sp, dipp or both");
  o.add(app, "--matrix-realizations", "trials.matrix_realizations", "matrix draws per grid point");
  o.add(app, "--data-realizations", "trials.data_realizations", "data draws per matrix");
  o.add(app, "--seed", "run.master_seed", "master seed");
  o.add(app, "-o,--output", "run.output", "output path ('-' for stdout)");
  o.add(app, "-j,--workers", "run.workers", "worker threads");
  o.add(app, "--experiment-id", "run.experiment_id", "identifier written to every row");
  o.add(app, "--timing", "run.timing", "record wall-clock runtime (true/false)");
  o.add(app, "--max-outer", "dipp.max_outer", "outer round limit");
  o.add(app, "--max-inner", "dipp.max_inner", "pursuit iteration limit");
  o.add(app, "--exchange", "dipp.exchange", "synchronous or sequential");
  o.add(app, "--truncation", "dipp.truncation", "lexicographic or vote_count");
  o.add(app, "--fixed-point-stop", "dipp.fixed_point_stop", "stop when side information settles");
}

dipp::ExperimentConfig resolve(const Overrides& o) {
  dipp::ExperimentConfig cfg = o.preset.empty() ? dipp::ExperimentConfig{} : dipp::preset_config(o.preset);
  if (!o.config_path.empty()) dipp::apply_config(cfg, dipp::parse_config_file(o.config_path));
  dipp::ConfigEntries flags;
  for (const auto& [k, v] : o.entries) flags[k] = v;
  dipp::apply_config(cfg, flags);
  cfg.validate();
  return cfg;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw dipp::IoError("cannot open '" + path + "' for writing");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed greedy pursuit simulator and bound calculator"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off");

  Overrides gen_o;
  auto* gen = app.add_subcommand("generate", "write one scenario to a text file");
  add_experiment_flags(gen, gen_o);
  std::size_t gen_m = 0;
  std::size_t gen_d = 0;
  gen->add_option("--matrix-realization", gen_m, "matrix realization index");
  gen->add_option("--data-realization", gen_d, "data realization index");

  Overrides run_o;
  auto* run = app.add_subcommand("run", "one grid point; optional per-round trace");
  add_experiment_flags(run, run_o);
  std::string trace_path;
  run->add_option("--trace", trace_path, "write the round trace of trial (0,0) on the first topology");

  Overrides sweep_o;
  auto* sweep = app.add_subcommand("sweep", "full grid over alpha, SMNR and topology");
  add_experiment_flags(sweep, sweep_o);

  auto* analyze = app.add_subcommand("analyze", "theoretical bound tables");
  std::string a_preset;
  std::vector<double> deltas;
  std::vector<double> a_cos;
  std::string c_variant;
  std::string mode = "finite";
  std::string format = "text";
  std::string a_output;
  analyze->add_option("--preset", a_preset, "paper-examples");
  analyze->add_option("--delta", deltas, "delta_3T grid")->delimiter(',');
  analyze->add_option("--a-co", a_cos, "fusion quality grid (network bounds)")->delimiter(',');
  analyze->add_option("--c-variant", c_variant, "squared or linear");
  analyze->add_option("--mode", mode, "finite or infinite (local bound)");
  analyze->add_option("--format", format, "text or csv");
  analyze->add_option("-o,--output", a_output, "also write CSV here");

  auto* topo = app.add_subcommand("topology", "export a network as an edge list");
  std::string topo_spec = "ring:1";
  std::size_t topo_nodes = 10;
  std::uint64_t topo_seed = 1;
  std::string topo_output;
  topo->add_option("--spec", topo_spec, "ring:d, complete or watts_strogatz:q,p");
  topo->add_option("--nodes", topo_nodes, "node count");
  topo->add_option("--seed", topo_seed, "seed for random models");
  topo->add_option("-o,--output", topo_output, "edge list path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_default_logger(spdlog::stderr_color_mt("dipp"));
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*gen) {
      const auto cfg = resolve(gen_o);
      auto sc = dipp::scenario_for(cfg, 0, 0, gen_m, gen_d);
      const auto s = dipp::gen_scenario(sc);
      std::ofstream file;
      dipp::write_scenario(open_output(cfg.output, file), s);
    } else if (*run) {
      auto cfg = resolve(run_o);
      if (cfg.alphas.size() != 1 || cfg.smnr_db.size() != 1) {
        throw dipp::ConfigError("run takes exactly one alpha and one SMNR value; use sweep for grids");
      }
      const auto rows = dipp::run_sweep(cfg);
      dipp::emit_csv(cfg, rows, std::cout);
      if (!trace_path.empty()) {
        if (cfg.topologies.empty()) throw dipp::ConfigError("--trace needs a topology");
        const auto s = dipp::gen_scenario(dipp::scenario_for(cfg, 0, 0, 0, 0));
        const auto res = dipp::dipp_run(s, dipp::topology_for(cfg, 0, 0), cfg.dipp);
        std::ofstream file;
        dipp::write_trace_csv(open_output(trace_path, file), res.trace);
      }
    } else if (*sweep) {
      const auto cfg = resolve(sweep_o);
      dipp::emit_csv(cfg, dipp::run_sweep(cfg), std::cout);
    } else if (*analyze) {
      std::vector<dipp::BoundReport> rows;
      if (!a_preset.empty()) {
        if (a_preset != "paper-examples") throw dipp::ConfigError("unknown analyze preset '" + a_preset + "'");
        rows = dipp::worked_example_bounds();
      }
      if (mode != "finite" && mode != "infinite") throw dipp::ConfigError("--mode must be finite or infinite");
      const auto imode = mode == "finite" ? dipp::IterationMode::finite : dipp::IterationMode::infinite;
      for (double d : deltas) {
        if (!(d >= 0.0 && d < 1.0)) throw dipp::ConfigError("--delta values must lie in [0, 1)");
        const auto sipp_variant = c_variant.empty() ? dipp::CVariant::squared : dipp::parse_c_variant(c_variant);
        const auto dipp_variant = c_variant.empty() ? dipp::CVariant::linear : dipp::parse_c_variant(c_variant);
        rows.push_back(dipp::sipp_bound(dipp::bound_constants(d, sipp_variant), imode));
        for (double ac : a_cos) {
          if (!(ac >= 0.0 && ac <= 1.0)) throw dipp::ConfigError("--a-co values must lie in [0, 1]");
          rows.push_back(dipp::dipp_bound(dipp::bound_constants(d, dipp_variant), ac));
        }
      }
      if (format == "csv") {
        std::cout << dipp::bound_csv_header() << '\n';
        for (const auto& r : rows) std::cout << dipp::bound_csv_row(r) << '\n';
      } else if (format == "text") {
        dipp::print_bound_table(std::cout, rows);
      } else {
        throw dipp::ConfigError("--format must be text or csv");
      }
      if (!a_output.empty()) {
        std::ofstream file;
        auto& out = open_output(a_output, file);
        out << dipp::bound_csv_header() << '\n';
        for (const auto& r : rows) out << dipp::bound_csv_row(r) << '\n';
      }
    } else if (*topo) {
      const auto spec = dipp::parse_topology_spec(topo_spec);
      dipp::Rng rng(topo_seed);
      const auto t = spec.build(topo_nodes, rng);
      std::ofstream file;
      dipp::write_edge_list(open_output(topo_output, file), t);
    }
  } catch (const dipp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dipp::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dipp::SingularSystemError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const dipp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
