#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnetbound/photonics.hpp"

namespace qnetbound {

// Directed multigraph of lossy channels with two designated endpoints.
// Direction is bookkeeping only: rate bounds across a cut are direction-blind,
// so antiparallel edges simply add capacity.
struct Network {
  std::vector<std::string> nodes;
  std::string node_a = "A";
  std::string node_b = "B";
  std::vector<ChannelSpec> edges;
};

// Bipartition of the node set, identified by the side containing node_a
// (sorted node ids). node_b lives on the complement.
struct Cut {
  std::vector<std::string> side_a;
};

// Average channel uses per edge index. Edges without an entry count as
// kDefaultEdgeUses. When total_uses is set it must equal the sum of the
// effective per-edge uses (1e-9 relative tolerance).
struct UseProfile {
  std::map<std::size_t, double> uses;
  std::optional<double> total_uses;
};

inline constexpr double kDefaultEdgeUses = 1.0;

void validate(const Network& network);
void validate(const Network& network, const Cut& cut);
void validate(const Network& network, const UseProfile& profile);

// Effective use count of one edge (profile entry or the default).
double edge_uses(const UseProfile& profile, std::size_t edge_index);

// Indices (ascending) of edges with endpoints on opposite sides of the cut,
// regardless of edge direction.
std::vector<std::size_t> cut_crossing_edges(const Network& network, const Cut& cut);

// Rate capacity of the cut: sum over crossing edges of
// uses * esq_lossy_bound(transmittance). Unused (zero-use) edges contribute
// nothing even when lossless; a used lossless crossing edge makes it +inf.
double cut_value(const Network& network, const Cut& cut, const UseProfile& profile);

struct MinCutResult {
  double value = 0.0;
  Cut witness;
};

// Minimum of cut_value over all bipartitions separating node_a from node_b,
// computed by max-flow on the undirected capacity graph (used lossless edges
// are contracted first). Disconnected endpoints give value 0 with node_a's
// connected component as witness. Ties prefer the smallest side_a, then the
// lexicographically smallest sorted id list.
MinCutResult min_cut(const Network& network, const UseProfile& profile);

// Exhaustive scan over all 2^k bipartitions (k = intermediate nodes); same
// contract and tie-breaking as min_cut. Refuses k > 20.
MinCutResult enumerate_cuts_oracle(const Network& network, const UseProfile& profile);

}  // namespace qnetbound
