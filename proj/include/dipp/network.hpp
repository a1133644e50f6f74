#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dipp/rng.hpp"

namespace dipp {

using Edge = std::pair<std::size_t, std::size_t>;

/// Static directed graph over nodes 0..L-1 with sorted neighbour lists.
class NetworkTopology {
 public:
  NetworkTopology() = default;

  /// Throws InvalidArgument on self-loops, duplicates or out-of-range endpoints.
  static NetworkTopology from_edges(std::size_t node_count, const std::vector<Edge>& edges);

  std::size_t node_count() const noexcept { return in_.size(); }
  const std::vector<std::size_t>& in_neighbors(std::size_t p) const { return in_.at(p); }
  const std::vector<std::size_t>& out_neighbors(std::size_t p) const { return out_.at(p); }
  std::size_t edge_count() const noexcept;
  /// All (src, dst) pairs sorted by src then dst.
  std::vector<Edge> edges() const;

  friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;

 private:
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Node p sends to p+1..p+d and receives from p-1..p-d (mod L).
NetworkTopology build_ring(std::size_t node_count, std::size_t degree);

NetworkTopology build_complete(std::size_t node_count);

/// Small-world graph of bidirectional links.
///
/// Node p starts linked to p+1..p+ceil(q/2) (mod L), so every node has
/// degree 2*ceil(q/2). Each lattice link then keeps its near endpoint and,
/// with probability p_rewire, moves its far endpoint to a uniformly chosen node
/// that is neither p nor already linked to p. Draws that are not connected are
/// discarded and redrawn.
NetworkTopology build_watts_strogatz(std::size_t node_count, std::size_t q, double p_rewire,
                                     Rng& rng, std::size_t max_draws = 10000);

/// One raw draw (no connectivity rejection).
NetworkTopology watts_strogatz_draw(std::size_t node_count, std::size_t q, double p_rewire,
                                    Rng& rng);

/// Strong connectivity: every node reaches every other along directed edges.
bool is_connected(const NetworkTopology& t);

/// "src dst" per line.
void write_edge_list(std::ostream& out, const NetworkTopology& t);

}  // namespace dipp
