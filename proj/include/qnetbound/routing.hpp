#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnetbound/netgraph.hpp"

namespace qnetbound {

// A concrete node_a -> node_b path: node ids visited in order plus the edge
// index taken for every hop (edges are traversable in either direction).
struct Route {
  std::vector<std::string> node_sequence;
  std::vector<std::size_t> edge_indices;
  double per_use_bound_bits = 0.0;
};

// Routing weight of an edge: 1 / esq. Lossless edges cost exactly 0,
// fully lossy ones +inf (unusable).
double edge_weight(const ChannelSpec& spec);

// Per-use bound along one path: the harmonic combination of its edges'
// esq values, equal to 1 / (sum of edge weights) exactly.
double path_bound(const Network& network, const Route& route);

// The path maximizing the per-use bound, i.e. minimizing total edge weight.
// Ties prefer fewer hops, then the lexicographically smallest node sequence,
// then the smallest edge indices. Throws DisconnectedError when node_b is
// unreachable over usable edges.
Route best_path(const Network& network);

}  // namespace qnetbound
