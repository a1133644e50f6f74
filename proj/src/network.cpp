#include "dipp/network.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <set>
#include <string>

#include <spdlog/spdlog.h>

#include "dipp/errors.hpp"

namespace dipp {

NetworkTopology NetworkTopology::from_edges(std::size_t node_count, const std::vector<Edge>& edges) {
  NetworkTopology t;
  t.in_.assign(node_count, {});
  t.out_.assign(node_count, {});
  for (const auto& [src, dst] : edges) {
    if (src >= node_count || dst >= node_count) {
      throw InvalidArgument("edge (" + std::to_string(src) + "," + std::to_string(dst) +
                            ") outside node range");
    }
    if (src == dst) throw InvalidArgument("self-loop at node " + std::to_string(src));
    t.out_[src].push_back(dst);
    t.in_[dst].push_back(src);
  }
  for (auto* lists : {&t.in_, &t.out_}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      if (std::adjacent_find(l.begin(), l.end()) != l.end()) {
        throw InvalidArgument("duplicate edge in topology");
      }
    }
  }
  return t;
}

std::size_t NetworkTopology::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : out_) n += l.size();
  return n;
}

std::vector<Edge> NetworkTopology::edges() const {
  std::vector<Edge> e;
  e.reserve(edge_count());
  for (std::size_t p = 0; p < out_.size(); ++p) {
    for (std::size_t q : out_[p]) e.emplace_back(p, q);
  }
  return e;
}

NetworkTopology build_ring(std::size_t node_count, std::size_t degree) {
  if (node_count < 2 || degree < 1 || degree > node_count - 1) {
    throw InvalidArgument("ring degree " + std::to_string(degree) + " outside [1, L-1] for L = " +
                          std::to_string(node_count));
  }
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < node_count; ++p) {
    for (std::size_t k = 1; k <= degree; ++k) edges.emplace_back(p, (p + k) % node_count);
  }
  return NetworkTopology::from_edges(node_count, edges);
}

NetworkTopology build_complete(std::size_t node_count) {
  if (node_count < 1) throw InvalidArgument("complete graph needs at least one node");
  if (node_count == 1) return NetworkTopology::from_edges(1, {});
  return build_ring(node_count, node_count - 1);
}

namespace {

std::size_t half_up(std::size_t q) { return (q + 1) / 2; }

void check_ws(std::size_t node_count, std::size_t q, double p_rewire) {
  if (q < 1) throw InvalidArgument("Watts-Strogatz q must be at least 1");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw InvalidArgument("Watts-Strogatz rewiring probability must lie in [0, 1]");
  }
  if (2 * half_up(q) > node_count - 1 || node_count < 2) {
    throw InvalidArgument("Watts-Strogatz q = " + std::to_string(q) + " too large for L = " +
                          std::to_string(node_count));
  }
}

}  // namespace

NetworkTopology watts_strogatz_draw(std::size_t node_count, std::size_t q, double p_rewire,
                                    Rng& rng) {
  check_ws(node_count, q, p_rewire);
  const std::size_t reach = half_up(q);
  std::vector<std::set<std::size_t>> adj(node_count);
  for (std::size_t p = 0; p < node_count; ++p) {
    for (std::size_t j = 1; j <= reach; ++j) {
      const std::size_t v = (p + j) % node_count;
      adj[p].insert(v);
      adj[v].insert(p);
    }
  }
  for (std::size_t j = 1; j <= reach; ++j) {
    for (std::size_t p = 0; p < node_count; ++p) {
      const std::size_t v = (p + j) % node_count;
      if (!adj[p].count(v)) continue;  // this link already moved
      if (!rng.bernoulli(p_rewire)) continue;
      if (adj[p].size() >= node_count - 1) continue;  // nowhere to go
      std::vector<std::size_t> choices;
      for (std::size_t w = 0; w < node_count; ++w) {
        if (w != p && !adj[p].count(w)) choices.push_back(w);
      }
      const std::size_t w = choices[static_cast<std::size_t>(rng.uniform_index(choices.size()))];
      adj[p].erase(v);
      adj[v].erase(p);
      adj[p].insert(w);
      adj[w].insert(p);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < node_count; ++p) {
    for (std::size_t v : adj[p]) edges.emplace_back(p, v);
  }
  return NetworkTopology::from_edges(node_count, edges);
}

NetworkTopology build_watts_strogatz(std::size_t node_count, std::size_t q, double p_rewire,
                                     Rng& rng, std::size_t max_draws) {
  check_ws(node_count, q, p_rewire);
  for (std::size_t draw = 1; draw <= max_draws; ++draw) {
    NetworkTopology t = watts_strogatz_draw(node_count, q, p_rewire, rng);
    if (is_connected(t)) {
      if (draw > 1) {
        spdlog::debug("Watts-Strogatz: connected graph after {} draws", draw);
      }
      return t;
    }
  }
  throw InvalidArgument("Watts-Strogatz: no connected draw within " + std::to_string(max_draws) +
                        " attempts");
}

namespace {

std::size_t reach_count(const NetworkTopology& t, bool forward) {
  std::vector<char> seen(t.node_count(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t n = 1;
  while (!todo.empty()) {
    const std::size_t u = todo.front();
    todo.pop();
    for (std::size_t v : forward ? t.out_neighbors(u) : t.in_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++n;
        todo.push(v);
      }
    }
  }
  return n;
}

}  // namespace

bool is_connected(const NetworkTopology& t) {
  if (t.node_count() <= 1) return true;
  return reach_count(t, true) == t.node_count() && reach_count(t, false) == t.node_count();
}

void write_edge_list(std::ostream& out, const NetworkTopology& t) {
  for (const auto& [src, dst] : t.edges()) out << src << ' ' << dst << '\n';
}

}  // namespace dipp
