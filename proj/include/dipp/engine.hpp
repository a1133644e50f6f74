#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dipp/fusion.hpp"
#include "dipp/network.hpp"
#include "dipp/pursuit.hpp"
#include "dipp/signal_model.hpp"

namespace dipp {

/// Which neighbour estimates a node sees during a round.
enum class ExchangeMode {
  /// Every node fuses the estimates all nodes held when the round began.
  synchronous,
  /// Nodes update one after another in index order; node p already sees the
  /// current-round estimates of nodes q < p and its own previous estimate.
  sequential,
};

std::string to_string(ExchangeMode m);
ExchangeMode parse_exchange_mode(const std::string& text);

struct DippOptions {
  std::size_t max_outer = 20;
  SippOptions sipp;
  ExchangeMode exchange = ExchangeMode::synchronous;
  TruncationRule truncation = TruncationRule::lexicographic;
  /// Stop once no active node receives new side information.
  bool fixed_point_stop = true;
};

struct NodeState {
  Vector estimate;
  SupportSet support;
  Vector residual;
  double residual_norm = 0.0;
  SupportSet side_info;
  SupportSet J_hat;
  SupportSet I_hat;
  /// Set once a round failed to lower the residual; the node keeps its estimate
  /// and keeps transmitting it but runs no further pursuits.
  bool frozen = false;
};

struct NodeRoundRecord {
  std::size_t round = 0;
  std::size_t node = 0;
  double residual_norm = 0.0;
  double support_distortion = 0.0;
  std::size_t j_hat_size = 0;
  std::size_t j_hat_correct = 0;
  std::size_t side_info_correct = 0;
  bool accepted = true;
  bool frozen = false;
};

struct RunTrace {
  std::vector<NodeRoundRecord> records;
  /// Number of outer rounds (k >= 1) in which at least one pursuit ran.
  std::size_t rounds = 0;
  /// Total indices transmitted over all edges and rounds.
  std::size_t indices_sent = 0;
  std::string stop_cause;
};

struct DippResult {
  std::vector<NodeState> nodes;
  RunTrace trace;
};

struct RoundOutcome {
  std::vector<NodeState> nodes;
  std::vector<NodeRoundRecord> records;
  /// True when some active node got side information different from its last round.
  bool side_info_changed = false;
  std::size_t indices_sent = 0;
};

/// The k = 0 pass: plain subspace pursuit at every node.
std::vector<NodeState> dipp_initialize(const Scenario& scenario, const DippOptions& opts);

/// One outer round k >= 1. Pure: the returned states are new values.
RoundOutcome dipp_round(const std::vector<NodeState>& states, const NetworkTopology& topology,
                        const Scenario& scenario, std::size_t k, const DippOptions& opts);

DippResult dipp_run(const Scenario& scenario, const NetworkTopology& topology,
                    const DippOptions& opts = {});

/// dipp_run starting from already computed k = 0 states (see dipp_initialize).
DippResult dipp_run_from(const Scenario& scenario, const NetworkTopology& topology,
                         const DippOptions& opts, std::vector<NodeState> initial);

}  // namespace dipp
