#include "qnetbound/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnetbound/bounds.hpp"
#include "qnetbound/errors.hpp"

namespace qnetbound {

namespace {

// Partial path ending at some node. hops and the node sequence are kept for
// tie-breaking; the ordering is extension-monotone (appending one edge to two
// comparable labels never swaps them), which is what lets Dijkstra settle on
// the globally preferred path.
struct PathLabel {
  double dist = 0.0;  // sum of edge weights, accumulated in path order
  std::vector<std::string> nodes;
  std::vector<std::size_t> edges;
};

bool label_less(const PathLabel& lhs, const PathLabel& rhs) {
  if (lhs.dist != rhs.dist) {
    return lhs.dist < rhs.dist;
  }
  if (lhs.edges.size() != rhs.edges.size()) {
    return lhs.edges.size() < rhs.edges.size();
  }
  if (lhs.nodes != rhs.nodes) {
    return lhs.nodes < rhs.nodes;
  }
  return lhs.edges < rhs.edges;
}

}  // namespace

double edge_weight(const ChannelSpec& spec) {
  // 1/inf = 0 for a lossless edge, 1/0 = +inf for an unusable one.
  return 1.0 / esq_lossy_bound(transmittance(spec), spec.mode_factor);
}

double path_bound(const Network& network, const Route& route) {
  validate(network);
  if (route.node_sequence.empty() || route.node_sequence.front() != network.node_a ||
      route.node_sequence.back() != network.node_b) {
    throw SpecError("route must run from '" + network.node_a + "' to '" +
                    network.node_b + "'");
  }
  if (route.edge_indices.size() + 1 != route.node_sequence.size()) {
    throw SpecError("route: needs exactly one edge per hop");
  }
  std::set<std::string> seen;
  for (const std::string& id : route.node_sequence) {
    if (!seen.insert(id).second) {
      throw SpecError("route: node '" + id + "' repeats; routes are simple paths");
    }
  }
  std::vector<double> esq(route.edge_indices.size());
  for (std::size_t i = 0; i < route.edge_indices.size(); ++i) {
    const std::size_t e = route.edge_indices[i];
    if (e >= network.edges.size()) {
      throw SpecError("route: edge index " + std::to_string(e) + " out of range");
    }
    const ChannelSpec& spec = network.edges[e];
    const std::string& s = route.node_sequence[i];
    const std::string& t = route.node_sequence[i + 1];
    const bool forward = spec.from_node == s && spec.to_node == t;
    const bool backward = spec.from_node == t && spec.to_node == s;
    if (!forward && !backward) {
      throw SpecError("route: edge " + std::to_string(e) + " does not connect '" + s +
                      "' and '" + t + "'");
    }
    esq[i] = esq_lossy_bound(transmittance(spec), spec.mode_factor);
  }
  return harmonic_bound_from_esq(esq);
}

Route best_path(const Network& network) {
  validate(network);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    index.emplace(network.nodes[i], i);
  }
  const std::size_t n = network.nodes.size();
  const std::size_t ia = index.at(network.node_a);
  const std::size_t ib = index.at(network.node_b);

  std::vector<double> weights(network.edges.size());
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    weights[e] = edge_weight(network.edges[e]);
  }

  std::vector<std::optional<PathLabel>> best(n);
  std::vector<char> settled(n, 0);
  best[ia] = PathLabel{0.0, {network.node_a}, {}};

  while (true) {
    // Linear-scan extraction keeps this simple and fully deterministic; the
    // networks routed here are small.
    std::size_t current = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (settled[v] || !best[v]) {
        continue;
      }
      if (current == n || label_less(*best[v], *best[current])) {
        current = v;
      }
    }
    if (current == n) {
      throw DisconnectedError("no usable path from '" + network.node_a + "' to '" +
                              network.node_b + "'");
    }
    settled[current] = 1;
    if (current == ib) {
      break;
    }
    for (std::size_t e = 0; e < network.edges.size(); ++e) {
      if (std::isinf(weights[e])) {
        continue;  // eta = 0: the edge can never distribute anything
      }
      const std::size_t u = index.at(network.edges[e].from_node);
      const std::size_t v = index.at(network.edges[e].to_node);
      const std::size_t other = u == current ? v : (v == current ? u : n);
      if (other == n || settled[other]) {
        continue;
      }
      PathLabel cand;
      cand.dist = best[current]->dist + weights[e];
      cand.nodes = best[current]->nodes;
      cand.nodes.push_back(network.nodes[other]);
      cand.edges = best[current]->edges;
      cand.edges.push_back(e);
      if (!best[other] || label_less(cand, *best[other])) {
        best[other] = std::move(cand);
      }
    }
  }

  Route route;
  route.node_sequence = best[ib]->nodes;
  route.edge_indices = best[ib]->edges;
  route.per_use_bound_bits = 1.0 / best[ib]->dist;
  return route;
}

}  // namespace qnetbound
