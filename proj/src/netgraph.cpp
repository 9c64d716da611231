// This translation unit intentionally keeps every cut evaluation funneled
// through one summation kernel (kernel_cut_value): min_cut, the exhaustive
// oracle, and the public cut_value must agree bit-for-bit on the same
// bipartition, otherwise cross-checks chase summation-order noise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnetbound/errors.hpp"
#include "qnetbound/netgraph.hpp"

namespace qnetbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residuals this small are treated as exhausted during the first max-flow
// phase, so degenerate near-ties cannot stall augmentation.
constexpr double kResidualFloor = 1e-12;

// Absolute tolerance under which two cut values count as tied (witness
// selection then falls back to smallest side, then lexicographic ids).
constexpr double kTieTolerance = 1e-12;

std::unordered_map<std::string, std::size_t> node_index(const Network& network) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(network.nodes.size());
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    index.emplace(network.nodes[i], i);
  }
  return index;
}

// Per-edge cut capacity: uses * esq. Zero-use edges carry exactly 0 so a
// lossless edge nobody uses cannot blow a cut up to infinity.
std::vector<double> edge_caps(const Network& network, const UseProfile& profile) {
  std::vector<double> caps(network.edges.size(), 0.0);
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const double m = edge_uses(profile, e);
    if (m == 0.0) {
      continue;
    }
    const ChannelSpec& spec = network.edges[e];
    caps[e] = m * esq_lossy_bound(transmittance(spec), spec.mode_factor);
  }
  return caps;
}

// Sum of capacities over crossing edges, in ascending edge order.
double kernel_cut_value(const Network& network,
                        const std::unordered_map<std::string, std::size_t>& index,
                        const std::vector<double>& caps,
                        const std::vector<char>& in_a) {
  double sum = 0.0;
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const ChannelSpec& spec = network.edges[e];
    if (in_a[index.at(spec.from_node)] != in_a[index.at(spec.to_node)]) {
      sum += caps[e];
    }
  }
  return sum;
}

// Connected component of `start` over all edges, direction- and use-blind.
std::vector<char> component_of(const Network& network,
                               const std::unordered_map<std::string, std::size_t>& index,
                               std::size_t start) {
  std::vector<std::vector<std::size_t>> adj(network.nodes.size());
  for (const ChannelSpec& spec : network.edges) {
    const std::size_t u = index.at(spec.from_node);
    const std::size_t v = index.at(spec.to_node);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(network.nodes.size(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<std::string> sorted_side(const Network& network, const std::vector<char>& in_a) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    if (in_a[i]) {
      ids.push_back(network.nodes[i]);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

struct Dsu {
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// (|side|, sorted ids) ordering used to break ties between cuts.
bool witness_less(const std::vector<std::string>& lhs, const std::vector<std::string>& rhs) {
  if (lhs.size() != rhs.size()) {
    return lhs.size() < rhs.size();
  }
  return lhs < rhs;
}

}  // namespace

void validate(const Network& network) {
  if (network.nodes.empty()) {
    throw SpecError("network has no nodes");
  }
  std::set<std::string> ids;
  for (const std::string& id : network.nodes) {
    if (!ids.insert(id).second) {
      throw SpecError("duplicate node id '" + id + "'");
    }
  }
  if (network.node_a == network.node_b) {
    throw SpecError("endpoints must be distinct nodes");
  }
  if (!ids.count(network.node_a)) {
    throw SpecError("endpoint '" + network.node_a + "' is not a node");
  }
  if (!ids.count(network.node_b)) {
    throw SpecError("endpoint '" + network.node_b + "' is not a node");
  }
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const ChannelSpec& spec = network.edges[e];
    if (!ids.count(spec.from_node)) {
      throw SpecError("edge " + std::to_string(e) + ": unknown node '" + spec.from_node + "'");
    }
    if (!ids.count(spec.to_node)) {
      throw SpecError("edge " + std::to_string(e) + ": unknown node '" + spec.to_node + "'");
    }
    validate(spec);
  }
}

void validate(const Network& network, const Cut& cut) {
  std::set<std::string> ids(network.nodes.begin(), network.nodes.end());
  std::set<std::string> side;
  for (const std::string& id : cut.side_a) {
    if (!ids.count(id)) {
      throw SpecError("cut: unknown node '" + id + "'");
    }
    if (!side.insert(id).second) {
      throw SpecError("cut: duplicate node '" + id + "'");
    }
  }
  if (!side.count(network.node_a)) {
    throw SpecError("cut must contain endpoint '" + network.node_a + "'");
  }
  if (side.count(network.node_b)) {
    throw SpecError("cut must not contain endpoint '" + network.node_b + "'");
  }
}

void validate(const Network& network, const UseProfile& profile) {
  double sum = 0.0;
  for (const auto& [e, m] : profile.uses) {
    if (e >= network.edges.size()) {
      throw SpecError("use profile: edge index " + std::to_string(e) + " out of range");
    }
    if (!std::isfinite(m) || m < 0.0) {
      throw SpecError("use profile: edge " + std::to_string(e) +
                      ": uses must be finite and nonnegative");
    }
  }
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    sum += edge_uses(profile, e);
  }
  if (profile.total_uses) {
    const double total = *profile.total_uses;
    if (!std::isfinite(total) || total < 0.0) {
      throw SpecError("use profile: total_uses must be finite and nonnegative");
    }
    const double tol = std::max(1e-12, 1e-9 * std::max(std::abs(sum), std::abs(total)));
    if (std::abs(sum - total) > tol) {
      throw SpecError("use profile: total_uses does not match the per-edge sum");
    }
  }
}

double edge_uses(const UseProfile& profile, std::size_t edge_index) {
  const auto it = profile.uses.find(edge_index);
  return it == profile.uses.end() ? kDefaultEdgeUses : it->second;
}

std::vector<std::size_t> cut_crossing_edges(const Network& network, const Cut& cut) {
  validate(network);
  validate(network, cut);
  const auto index = node_index(network);
  std::vector<char> in_a(network.nodes.size(), 0);
  for (const std::string& id : cut.side_a) {
    in_a[index.at(id)] = 1;
  }
  std::vector<std::size_t> crossing;
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const ChannelSpec& spec = network.edges[e];
    if (in_a[index.at(spec.from_node)] != in_a[index.at(spec.to_node)]) {
      crossing.push_back(e);
    }
  }
  return crossing;
}

double cut_value(const Network& network, const Cut& cut, const UseProfile& profile) {
  validate(network);
  validate(network, cut);
  validate(network, profile);
  const auto index = node_index(network);
  std::vector<char> in_a(network.nodes.size(), 0);
  for (const std::string& id : cut.side_a) {
    in_a[index.at(id)] = 1;
  }
  return kernel_cut_value(network, index, edge_caps(network, profile), in_a);
}

MinCutResult min_cut(const Network& network, const UseProfile& profile) {
  validate(network);
  validate(network, profile);
  const auto index = node_index(network);
  const std::size_t n = network.nodes.size();
  const std::size_t ia = index.at(network.node_a);
  const std::size_t ib = index.at(network.node_b);

  const std::vector<char> comp = component_of(network, index, ia);
  if (!comp[ib]) {
    return {0.0, Cut{sorted_side(network, comp)}};
  }

  const std::vector<double> caps = edge_caps(network, profile);

  // Contract edges of infinite capacity: no finite cut ever separates their
  // endpoints. If that glues the two endpoints together every cut is infinite.
  Dsu dsu(n);
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    if (std::isinf(caps[e])) {
      dsu.unite(index.at(network.edges[e].from_node), index.at(network.edges[e].to_node));
    }
  }
  if (dsu.find(ia) == dsu.find(ib)) {
    return {kInf, Cut{{network.node_a}}};
  }

  // Aggregate parallel and antiparallel capacity between supernodes; cuts are
  // direction-blind, so capacity simply adds.
  std::map<std::pair<std::size_t, std::size_t>, double> agg;
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    if (caps[e] <= 0.0) {
      continue;
    }
    std::size_t u = dsu.find(index.at(network.edges[e].from_node));
    std::size_t v = dsu.find(index.at(network.edges[e].to_node));
    if (u == v) {
      continue;
    }
    agg[std::minmax(u, v)] += caps[e];
  }

  // Residual graph: one arc per direction per undirected capacity, rev = id^1.
  std::vector<std::size_t> arc_to;
  std::vector<double> arc_cap;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [key, c] : agg) {
    adj[key.first].push_back(arc_to.size());
    arc_to.push_back(key.second);
    arc_cap.push_back(c);
    adj[key.second].push_back(arc_to.size());
    arc_to.push_back(key.first);
    arc_cap.push_back(c);
  }

  const std::size_t src = dsu.find(ia);
  const std::size_t dst = dsu.find(ib);
  constexpr std::size_t kNoArc = static_cast<std::size_t>(-1);

  // Edmonds-Karp. Phase one ignores residual crumbs below kResidualFloor;
  // phase two drains the survivors to exact zero so the reachable side of the
  // residual graph is a genuine minimum cut. Termination is safe either way:
  // the shortest-augmenting-path bound on augmentation count is combinatorial
  // and independent of capacity values.
  for (const double floor : {kResidualFloor, 0.0}) {
    while (true) {
      std::vector<std::size_t> parent_arc(n, kNoArc);
      std::deque<std::size_t> queue{src};
      std::vector<char> seen(n, 0);
      seen[src] = 1;
      while (!queue.empty() && !seen[dst]) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t a : adj[u]) {
          const std::size_t v = arc_to[a];
          if (!seen[v] && arc_cap[a] > floor) {
            seen[v] = 1;
            parent_arc[v] = a ^ 1;  // arc back toward src
            queue.push_back(v);
          }
        }
      }
      if (!seen[dst]) {
        break;
      }
      double bottleneck = kInf;
      for (std::size_t v = dst; v != src; v = arc_to[parent_arc[v]]) {
        bottleneck = std::min(bottleneck, arc_cap[parent_arc[v] ^ 1]);
      }
      for (std::size_t v = dst; v != src; v = arc_to[parent_arc[v]]) {
        arc_cap[parent_arc[v] ^ 1] -= bottleneck;
        arc_cap[parent_arc[v]] += bottleneck;
      }
    }
  }

  // Residual-reachable supernodes form the unique smallest minimizing side.
  std::vector<char> reach(n, 0);
  reach[src] = 1;
  std::deque<std::size_t> queue{src};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t a : adj[u]) {
      const std::size_t v = arc_to[a];
      if (!reach[v] && arc_cap[a] > 0.0) {
        reach[v] = 1;
        queue.push_back(v);
      }
    }
  }

  std::vector<char> in_a(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    in_a[v] = reach[dsu.find(v)];
  }
  MinCutResult result;
  result.value = kernel_cut_value(network, index, caps, in_a);
  result.witness = Cut{sorted_side(network, in_a)};
  return result;
}

MinCutResult enumerate_cuts_oracle(const Network& network, const UseProfile& profile) {
  validate(network);
  validate(network, profile);
  const auto index = node_index(network);
  const std::size_t n = network.nodes.size();
  const std::size_t ia = index.at(network.node_a);
  const std::size_t ib = index.at(network.node_b);

  std::vector<std::size_t> middle;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != ia && v != ib) {
      middle.push_back(v);
    }
  }
  if (middle.size() > 20) {
    throw SpecError("refusing to enumerate cuts of a network with more than 20 "
                    "intermediate nodes");
  }

  const std::vector<char> comp = component_of(network, index, ia);
  if (!comp[ib]) {
    return {0.0, Cut{sorted_side(network, comp)}};
  }

  const std::vector<double> caps = edge_caps(network, profile);
  const std::uint64_t masks = 1ULL << middle.size();
  std::vector<char> in_a(n, 0);
  const auto apply_mask = [&](std::uint64_t mask) {
    std::fill(in_a.begin(), in_a.end(), 0);
    in_a[ia] = 1;
    for (std::size_t bit = 0; bit < middle.size(); ++bit) {
      if (mask & (1ULL << bit)) {
        in_a[middle[bit]] = 1;
      }
    }
  };

  double vmin = kInf;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    apply_mask(mask);
    vmin = std::min(vmin, kernel_cut_value(network, index, caps, in_a));
  }

  // Second pass: among cuts tied with the minimum, prefer the smallest side,
  // then the lexicographically smallest sorted id list.
  bool have = false;
  double best_value = kInf;
  std::vector<std::string> best_side;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    apply_mask(mask);
    const double v = kernel_cut_value(network, index, caps, in_a);
    if (!(v <= vmin + kTieTolerance)) {
      continue;
    }
    std::vector<std::string> side = sorted_side(network, in_a);
    if (!have || witness_less(side, best_side)) {
      have = true;
      best_value = v;
      best_side = std::move(side);
    }
  }
  return {best_value, Cut{std::move(best_side)}};
}

}  // namespace qnetbound
