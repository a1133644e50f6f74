#include "dipp/engine.hpp"

#include <spdlog/spdlog.h>

#include "dipp/errors.hpp"
#include "dipp/metrics.hpp"

namespace dipp {

std::string to_string(ExchangeMode m) {
  return m == ExchangeMode::synchronous ? "synchronous" : "sequential";
}

ExchangeMode parse_exchange_mode(const std::string& text) {
  if (text == "synchronous") return ExchangeMode::synchronous;
  if (text == "sequential") return ExchangeMode::sequential;
  throw InvalidArgument("unknown exchange mode '" + text + "'");
}

namespace {

NodeState from_result(SippResult r) {
  NodeState s;
  s.estimate = std::move(r.estimate);
  s.support = std::move(r.support);
  s.residual = std::move(r.residual);
  s.residual_norm = r.residual_norm;
  return s;
}

NodeRoundRecord record_for(const NodeState& s, const NodeData& node, std::size_t k, std::size_t p,
                           bool accepted) {
  NodeRoundRecord rec;
  rec.round = k;
  rec.node = p;
  rec.residual_norm = s.residual_norm;
  rec.support_distortion = support_distortion(node.x.support, s.support);
  rec.j_hat_size = s.J_hat.size();
  rec.j_hat_correct = intersection_size(s.J_hat, node.x.support);
  rec.side_info_correct = intersection_size(s.side_info, node.x.support);
  rec.accepted = accepted;
  rec.frozen = s.frozen;
  return rec;
}

void check_sizes(const Scenario& scenario, const NetworkTopology& topology) {
  if (topology.node_count() != scenario.nodes.size()) {
    throw InvalidArgument("topology has " + std::to_string(topology.node_count()) +
                          " nodes but the scenario has " + std::to_string(scenario.nodes.size()));
  }
}

}  // namespace

std::vector<NodeState> dipp_initialize(const Scenario& scenario, const DippOptions& opts) {
  std::vector<NodeState> states;
  states.reserve(scenario.nodes.size());
  for (const auto& node : scenario.nodes) {
    states.push_back(from_result(sp_run(node.y, node.A, scenario.config.sparsity(), opts.sipp)));
  }
  return states;
}

RoundOutcome dipp_round(const std::vector<NodeState>& states, const NetworkTopology& topology,
                        const Scenario& scenario, std::size_t k, const DippOptions& opts) {
  check_sizes(scenario, topology);
  if (states.size() != scenario.nodes.size()) throw InvalidArgument("dipp_round: state count mismatch");
  if (k < 1) throw InvalidArgument("dipp_round: rounds start at k = 1");
  const std::size_t t = scenario.config.sparsity();
  const std::size_t n = scenario.config.N;

  RoundOutcome out;
  out.nodes = states;
  for (std::size_t p = 0; p < states.size(); ++p) {
    out.indices_sent += topology.out_neighbors(p).size() * states[p].support.size();
  }
  // In sequential mode `out.nodes` is updated in place, so later nodes read
  // the fresh estimates of earlier ones.
  const std::vector<NodeState>& source =
      opts.exchange == ExchangeMode::synchronous ? states : out.nodes;

  for (std::size_t p = 0; p < states.size(); ++p) {
    const NodeData& node = scenario.nodes[p];
    const NodeState& before = states[p];
    if (before.frozen) {
      out.records.push_back(record_for(before, node, k, p, false));
      continue;
    }
    std::vector<SupportSet> received;
    received.reserve(topology.in_neighbors(p).size());
    for (std::size_t q : topology.in_neighbors(p)) received.push_back(source[q].support);

    const SupportSet j_hat = consensus(received, before.support, t, n, opts.truncation);
    const FusionOutput fused = expansion(j_hat, before.estimate, t);
    if (!(fused.T_si == before.side_info)) out.side_info_changed = true;

    SippResult r = sipp_run(node.y, node.A, t, fused.T_si, opts.sipp);
    NodeState next;
    bool accepted = r.residual_norm <= before.residual_norm;
    if (accepted) {
      next = from_result(std::move(r));
    } else {
      next = before;
      next.frozen = true;
    }
    next.side_info = fused.T_si;
    next.J_hat = fused.J_hat;
    next.I_hat = fused.I_hat;
    out.records.push_back(record_for(next, node, k, p, accepted));
    out.nodes[p] = std::move(next);
  }
  return out;
}

namespace {

/// True when a synchronous round would hand every active node the side
/// information it already used, so the round could not change anything.
bool round_is_idle(const std::vector<NodeState>& states, const NetworkTopology& topology,
                   const Scenario& scenario, const DippOptions& opts) {
  const std::size_t t = scenario.config.sparsity();
  for (std::size_t p = 0; p < states.size(); ++p) {
    if (states[p].frozen) continue;
    std::vector<SupportSet> received;
    for (std::size_t q : topology.in_neighbors(p)) received.push_back(states[q].support);
    const SupportSet j_hat = consensus(received, states[p].support, t, scenario.config.N, opts.truncation);
    if (!(expansion(j_hat, states[p].estimate, t).T_si == states[p].side_info)) return false;
  }
  return true;
}

}  // namespace

DippResult dipp_run(const Scenario& scenario, const NetworkTopology& topology,
                    const DippOptions& opts) {
  check_sizes(scenario, topology);
  return dipp_run_from(scenario, topology, opts, dipp_initialize(scenario, opts));
}

DippResult dipp_run_from(const Scenario& scenario, const NetworkTopology& topology,
                         const DippOptions& opts, std::vector<NodeState> initial) {
  check_sizes(scenario, topology);
  if (initial.size() != scenario.nodes.size()) throw InvalidArgument("dipp: initial state count mismatch");
  if (!is_connected(topology)) {
    spdlog::warn("dipp: topology is not strongly connected; fusion stays local to components");
  }
  DippResult res;
  res.nodes = std::move(initial);
  for (std::size_t p = 0; p < res.nodes.size(); ++p) {
    res.trace.records.push_back(record_for(res.nodes[p], scenario.nodes[p], 0, p, true));
  }
  res.trace.stop_cause = "max_outer";
  for (std::size_t k = 1; k <= opts.max_outer; ++k) {
    bool all_frozen = true;
    for (const auto& s : res.nodes) all_frozen = all_frozen && s.frozen;
    if (all_frozen) {
      res.trace.stop_cause = "all_frozen";
      break;
    }
    // The k = 1 round always runs: no node has side information yet.
    if (opts.fixed_point_stop && k > 1 && opts.exchange == ExchangeMode::synchronous &&
        round_is_idle(res.nodes, topology, scenario, opts)) {
      res.trace.stop_cause = "fixed_point";
      break;
    }
    RoundOutcome round = dipp_round(res.nodes, topology, scenario, k, opts);
    res.nodes = std::move(round.nodes);
    res.trace.records.insert(res.trace.records.end(), round.records.begin(), round.records.end());
    res.trace.rounds = k;
    res.trace.indices_sent += round.indices_sent;
    if (opts.fixed_point_stop && k > 1 && !round.side_info_changed) {
      res.trace.stop_cause = "fixed_point";
      break;
    }
  }
  return res;
}

}  // namespace dipp
