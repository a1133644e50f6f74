#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dipp/analysis.hpp"
#include "dipp/config.hpp"
#include "dipp/engine.hpp"

namespace dipp {

inline constexpr int kCsvSchemaVersion = 1;

/// One CSV row: an algorithm (and for DIPP a topology) at one (alpha, SMNR) grid point.
struct GridRow {
  std::string experiment_id;
  Algorithm algorithm = Algorithm::sp;
  std::optional<TopologySpec> topology;  ///< empty for SP
  std::size_t N = 0;
  std::size_t M = 0;
  double alpha = 0.0;
  std::size_t T = 0;
  std::size_t J = 0;
  std::size_t I = 0;
  std::size_t L = 0;
  std::optional<double> smnr_db;
  SignalKind kind = SignalKind::gaussian;
  std::size_t trials = 0;
  /// Ratio of summed signal energy to summed error energy over all trials and nodes.
  double srer_db_mean = 0.0;
  /// Sample standard deviation of the per-trial SRER values.
  double srer_db_std = 0.0;
  double asce_mean = 0.0;
  double asce_std = 0.0;
  double outer_rounds_mean = 0.0;
  double runtime_ms_mean = 0.0;
  std::uint64_t seed = 0;
  /// Trials whose SRER reached the exact-recovery cap.
  std::size_t capped_trials = 0;
};

/// The scenario of trial (m, d) at grid point (alpha_index, smnr_index).
ScenarioConfig scenario_for(const ExperimentConfig& cfg, std::size_t alpha_index,
                            std::size_t smnr_index, std::size_t m, std::size_t d);

/// The graph for topology `topology_index` in matrix realization m.
NetworkTopology topology_for(const ExperimentConfig& cfg, std::size_t topology_index, std::size_t m);

/// Runs every grid point and algorithm. Output depends only on the config,
/// not on cfg.workers.
std::vector<GridRow> run_sweep(const ExperimentConfig& cfg);

std::string csv_header();
std::string csv_row(const GridRow& row);
void write_csv(std::ostream& out, const std::vector<GridRow>& rows);
/// Writes to cfg.output, or to `out` when the path is empty or "-".
void emit_csv(const ExperimentConfig& cfg, const std::vector<GridRow>& rows, std::ostream& out);

std::string trace_csv_header();
void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// Aligned text table of bound rows.
void print_bound_table(std::ostream& out, const std::vector<BoundReport>& rows);

std::string format_real(double v);

}  // namespace dipp
