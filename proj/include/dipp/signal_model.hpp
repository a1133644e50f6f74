#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dipp/linalg.hpp"
#include "dipp/rng.hpp"
#include "dipp/support_set.hpp"

namespace dipp {

enum class SignalKind { gaussian, binary };

std::string to_string(SignalKind kind);
SignalKind parse_signal_kind(const std::string& text);

struct ScenarioConfig {
  std::size_t N = 1000;
  std::size_t M = 160;
  std::size_t J = 15;
  std::size_t I = 5;
  std::size_t L = 10;
  /// Nominal SMNR in dB; empty means noiseless measurements.
  std::optional<double> smnr_db = 20.0;
  SignalKind kind = SignalKind::gaussian;
  std::uint64_t master_seed = 1;
  /// Selects which draw of the measurement matrices is used.
  std::uint64_t matrix_realization = 0;
  /// Selects which draw of supports, amplitudes and noise is used.
  std::uint64_t data_realization = 0;

  std::size_t sparsity() const noexcept { return J + I; }
  /// Throws InvalidArgument when the invariants M < N, J + I <= M, L >= 1 fail.
  void validate() const;
};

struct SparseSignal {
  Vector values;
  SupportSet support;
  SupportSet common_part;
  SupportSet individual_part;
};

struct NodeData {
  SparseSignal x;
  Matrix A;
  Vector noise;
  Vector y;
};

struct Scenario {
  ScenarioConfig config;
  SupportSet common_support;
  std::vector<NodeData> nodes;
};

struct SupportDraw {
  SupportSet common;
  std::vector<SupportSet> individual;
};

/// Common support drawn uniformly, then one individual part per node drawn
/// uniformly from the remaining indices.
SupportDraw gen_supports(const ScenarioConfig& cfg, Rng& rng);

/// Size-k subset of {0..n-1} \ excluded, uniform.
SupportSet draw_subset(std::size_t n, std::size_t k, const SupportSet& excluded, Rng& rng);

SparseSignal gen_signal(std::size_t n, const SupportSet& common, const SupportSet& individual,
                        SignalKind kind, Rng& rng);

/// M x N Gaussian matrix with unit-norm columns.
Matrix gen_matrix(std::size_t m, std::size_t n, Rng& rng);

/// Noise variance per measurement for the nominal signal power `sparsity`.
double noise_variance(std::size_t sparsity, std::size_t m, double smnr_db);

Vector gen_noise(std::size_t sparsity, std::size_t m, std::optional<double> smnr_db, Rng& rng);

/// Deterministic in the config (seed and realization ids included); node p
/// draws from its own streams so nodes can be built in any order.
Scenario gen_scenario(const ScenarioConfig& cfg);

/// The node-p part of gen_scenario; `common` must be the scenario's common support.
NodeData gen_node(const ScenarioConfig& cfg, const SupportSet& common, std::size_t p);

SupportSet gen_common_support(const ScenarioConfig& cfg);

}  // namespace dipp
