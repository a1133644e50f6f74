#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dipp/engine.hpp"
#include "dipp/network.hpp"
#include "dipp/signal_model.hpp"

namespace dipp {

enum class TopologyKind { ring, complete, watts_strogatz };

/// Textual forms: "ring:d", "complete", "watts_strogatz:q,p".
struct TopologySpec {
  TopologyKind kind = TopologyKind::ring;
  std::size_t degree_or_q = 1;
  double p_rewire = 0.0;

  std::string name() const;  ///< "ring", "complete" or "watts_strogatz"
  std::string text() const;  ///< round-trips through parse_topology_spec
  /// Builds the graph; `rng` is only consumed by the random model.
  NetworkTopology build(std::size_t node_count, Rng& rng) const;
  bool random() const noexcept { return kind == TopologyKind::watts_strogatz; }
};

TopologySpec parse_topology_spec(const std::string& text);

enum class Algorithm { sp, dipp };
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& text);

struct ExperimentConfig {
  std::size_t N = 1000;
  std::size_t J = 15;
  std::size_t I = 5;
  std::size_t L = 10;
  SignalKind kind = SignalKind::gaussian;

  std::vector<double> alphas{0.16};
  /// nullopt entries stand for noiseless measurements.
  std::vector<std::optional<double>> smnr_db{20.0};
  std::vector<TopologySpec> topologies{TopologySpec{}};
  std::vector<Algorithm> algorithms{Algorithm::sp, Algorithm::dipp};

  std::size_t matrix_realizations = 10;
  std::size_t data_realizations = 10;

  std::uint64_t master_seed = 1;
  std::string output;
  std::size_t workers = 1;
  std::string experiment_id = "sweep";
  /// Measure wall-clock time; off by default so output is reproducible byte for byte.
  bool timing = false;

  DippOptions dipp;

  std::size_t trials() const noexcept { return matrix_realizations * data_realizations; }
  /// M for the alpha at `index`; throws ConfigError when alpha*N is not an integer.
  std::size_t measurements(std::size_t alpha_index) const;
  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// Raw "section.key" -> value map from an INI-style file.
using ConfigEntries = std::map<std::string, std::string>;

/// Grammar: '#' starts a comment, "[section]" opens a section, "key = value"
/// assigns. Keys outside a section are taken literally.
ConfigEntries parse_config_text(std::istream& in, const std::string& source = "<config>");
ConfigEntries parse_config_file(const std::string& path);

/// Applies entries on top of `cfg`; unknown keys are a ConfigError.
void apply_config(ExperimentConfig& cfg, const ConfigEntries& entries);

/// Named presets; see preset_names().
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

std::vector<double> parse_real_list(const std::string& text, const std::string& key);
std::vector<std::optional<double>> parse_smnr_list(const std::string& text);
std::vector<double> alpha_grid(double from, double to, double step);

}  // namespace dipp
