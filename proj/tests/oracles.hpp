#pragma once

// Independent re-derivations and random-instance generators shared by the
// test suites. The re-derivations are deliberately written differently from
// the library (long double arithmetic, direct formulas, exhaustive scans,
// bisection on feasibility) so that agreement is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qnetbound/bounds.hpp"
#include "qnetbound/netgraph.hpp"
#include "qnetbound/rng.hpp"
#include "qnetbound/routing.hpp"

namespace qtest {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric relative comparison with an absolute floor for near-zero values.
inline bool rel_close(double a, double b, double rel, double abs_floor = 1e-12) {
  if (std::isnan(a) || std::isnan(b)) {
    return false;
  }
  if (std::isinf(a) || std::isinf(b)) {
    return a == b;
  }
  const double diff = std::abs(a - b);
  return diff <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

inline double rel_err(double a, double b) {
  if (a == b) {
    return 0.0;
  }
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// ---- closed-form re-derivations in long double ----

inline constexpr long double kLn2L = 0.693147180559945309417232121458176568L;

inline long double esq_oracle(long double eta, int mode_factor) {
  if (eta == 1.0L) {
    return std::numeric_limits<long double>::infinity();
  }
  return static_cast<long double>(mode_factor) * (log1pl(eta) - log1pl(-eta)) / kLn2L;
}

inline long double chain_per_use_oracle(long double total_km, int n, long double l_att,
                                        int mode_factor) {
  const long double eta = expl(-(total_km / (n + 1)) / l_att);
  return esq_oracle(eta, mode_factor) / (n + 1);
}

inline long double analytic_rate_oracle(long double total_km, int n, long double l_att) {
  return expl(-(total_km / (n + 1)) / l_att) / (n + 1);
}

// ---- channel-use allocation across chain segments ----

// Largest t such that uses m_j = t/esq_j fit into one use per trial on
// average (sum m_j <= 1): bisection on feasibility. This is the quantity the
// closed-form harmonic combination claims to equal.
inline double allocation_max_oracle(const std::vector<double>& esq) {
  double hi = kInf;
  for (double e : esq) {
    hi = std::min(hi, e);
  }
  if (hi == 0.0) {
    return 0.0;  // a dead segment admits no rate at all
  }
  const bool all_lossless = std::isinf(hi);
  if (all_lossless) {
    return kInf;
  }
  const auto feasible = [&](double t) {
    double sum = 0.0;
    for (double e : esq) {
      sum += t / e;  // e = inf contributes nothing, matching a free segment
    }
    return sum <= 1.0;
  };
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Best chain bound over segment placements at fixed length and station
// count: random restarts plus a pairwise-transfer pattern search. Used to
// check that equal spacing is the maximizer.
inline double spacing_search_best(double total_km, int n, double l_att,
                                  qnetbound::SplitMix64& rng, int restarts) {
  const std::size_t k = static_cast<std::size_t>(n) + 1;
  const auto eval = [&](const std::vector<double>& spacings) {
    qnetbound::ChainSpec chain;
    chain.total_length_km = total_km;
    chain.num_intermediate = n;
    chain.spacings_km = spacings;
    chain.attenuation_length_km = l_att;
    return qnetbound::uneven_chain_bound_per_use(chain);
  };
  const auto renormalize = [&](std::vector<double>& s) {
    double sum = 0.0;
    for (double v : s) {
      sum += v;
    }
    for (double& v : s) {
      v *= total_km / sum;
    }
  };

  double best = -kInf;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> s(k);
    if (r == 0) {
      std::fill(s.begin(), s.end(), total_km / static_cast<double>(k));
    } else {
      for (double& v : s) {
        v = -std::log(rng.next_unit_open());  // Dirichlet(1,...,1) direction
      }
      renormalize(s);
    }
    double value = eval(s);
    // Pattern search: shift length between segment pairs, shrinking steps.
    for (double step = 0.25; step >= 1e-7; step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            if (i == j) {
              continue;
            }
            const double delta = step * total_km / static_cast<double>(k);
            if (s[j] - delta <= 1e-9 * total_km) {
              continue;
            }
            std::vector<double> cand = s;
            cand[i] += delta;
            cand[j] -= delta;
            renormalize(cand);
            const double cand_value = eval(cand);
            if (cand_value > value) {
              value = cand_value;
              s = std::move(cand);
              improved = true;
            }
          }
        }
      }
    }
    best = std::max(best, value);
  }
  return best;
}

// ---- random instances ----

inline double unit(qnetbound::SplitMix64& rng) { return rng.next_unit_open(); }

inline std::uint64_t below(qnetbound::SplitMix64& rng, std::uint64_t bound) {
  return rng.next() % bound;
}

struct RandomNetOptions {
  std::size_t max_intermediate = 10;
  std::size_t max_edges = 30;
  bool ensure_connected = false;  // seed a random A->B path first
  bool allow_lossless = true;     // sprinkle eta = 1 edges (contraction paths)
  bool allow_zero_uses = true;    // sprinkle m = 0 edges
  bool explicit_uses = true;      // fill the profile (else rely on defaults)
};

struct RandomNet {
  qnetbound::Network net;
  qnetbound::UseProfile profile;
};

inline RandomNet random_network(qnetbound::SplitMix64& rng, const RandomNetOptions& opt) {
  RandomNet out;
  const std::size_t k = below(rng, opt.max_intermediate + 1);
  out.net.nodes.push_back("A");
  out.net.nodes.push_back("B");
  for (std::size_t i = 0; i < k; ++i) {
    const std::string id = "C" + std::string(i + 1 < 10 ? "0" : "") + std::to_string(i + 1);
    out.net.nodes.push_back(id);
  }
  const std::size_t n = out.net.nodes.size();

  const auto add_edge = [&](std::size_t u, std::size_t v) {
    qnetbound::ChannelSpec spec;
    spec.from_node = out.net.nodes[u];
    spec.to_node = out.net.nodes[v];
    if (opt.allow_lossless && unit(rng) < 0.1) {
      spec.transmittance_override = 1.0;
    } else {
      spec.transmittance_override = 0.05 + 0.9 * unit(rng);
    }
    if (unit(rng) < 0.1) {
      spec.mode_factor = 1 + static_cast<int>(below(rng, 3));
    }
    const std::size_t index = out.net.edges.size();
    if (opt.explicit_uses) {
      if (opt.allow_zero_uses && unit(rng) < 0.1) {
        out.profile.uses[index] = 0.0;
      } else {
        out.profile.uses[index] = 4.0 * unit(rng);
      }
    }
    out.net.edges.push_back(spec);
  };

  if (opt.ensure_connected) {
    // Random simple backbone A -> (shuffled subset of intermediates) -> B.
    std::vector<std::size_t> middle(k);
    for (std::size_t i = 0; i < k; ++i) {
      middle[i] = i + 2;
    }
    for (std::size_t i = middle.size(); i > 1; --i) {
      std::swap(middle[i - 1], middle[below(rng, i)]);
    }
    const std::size_t hops = k == 0 ? 0 : below(rng, k + 1);
    std::size_t prev = 0;  // A
    for (std::size_t i = 0; i < hops; ++i) {
      add_edge(prev, middle[i]);
      prev = middle[i];
    }
    add_edge(prev, 1);  // B
  }

  const std::size_t target = 1 + below(rng, opt.max_edges);
  while (out.net.edges.size() < target) {
    const std::size_t u = below(rng, n);
    std::size_t v = below(rng, n - 1);
    if (v >= u) {
      ++v;
    }
    add_edge(u, v);
  }
  return out;
}

// ---- exhaustive routing ----

// Best harmonic path bound over every simple A->B path (all edge choices),
// or nothing when no usable path exists. Lossless edges are traversable;
// zero-esq edges are not (they can never distribute anything).
inline std::optional<double> best_path_oracle(const qnetbound::Network& net) {
  std::vector<std::string> ids = net.nodes;
  const auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(
        std::find(ids.begin(), ids.end(), id) - ids.begin());
  };
  const std::size_t n = ids.size();
  const std::size_t ia = index_of(net.node_a);
  const std::size_t ib = index_of(net.node_b);

  struct Arc {
    std::size_t to;
    double esq;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (const qnetbound::ChannelSpec& spec : net.edges) {
    const double esq =
        qnetbound::esq_lossy_bound(qnetbound::transmittance(spec), spec.mode_factor);
    if (esq == 0.0) {
      continue;
    }
    const std::size_t u = index_of(spec.from_node);
    const std::size_t v = index_of(spec.to_node);
    adj[u].push_back({v, esq});
    adj[v].push_back({u, esq});
  }

  std::optional<double> best;
  std::vector<char> visited(n, 0);
  std::vector<double> esq_stack;
  const auto dfs = [&](auto&& self, std::size_t u) -> void {
    if (u == ib) {
      const double bound = qnetbound::harmonic_bound_from_esq(esq_stack);
      if (!best || bound > *best) {
        best = bound;
      }
      return;
    }
    for (const Arc& arc : adj[u]) {
      if (visited[arc.to]) {
        continue;
      }
      visited[arc.to] = 1;
      esq_stack.push_back(arc.esq);
      self(self, arc.to);
      esq_stack.pop_back();
      visited[arc.to] = 0;
    }
  };
  visited[ia] = 1;
  dfs(dfs, ia);
  return best;
}

}  // namespace qtest
