#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qnetbound/netgraph.hpp"
#include "qnetbound/photonics.hpp"

namespace qnetbound {

// Linear repeater chain: the two endpoints plus num_intermediate equally
// spaced stations, unless spacings_km pins each of the num_intermediate + 1
// segment lengths explicitly (they must sum to total_length_km).
struct ChainSpec {
  double total_length_km = 0.0;
  int num_intermediate = 0;
  std::optional<std::vector<double>> spacings_km;
  std::optional<double> attenuation_length_km;
  std::optional<double> loss_db_per_km;
  int mode_factor = kDefaultModeFactor;
};

void validate(const ChainSpec& chain);

// Attenuation length resolved from whichever representation the chain carries.
double chain_attenuation_length_km(const ChainSpec& chain);

// The num_intermediate + 1 segment lengths (explicit spacings or equal split).
std::vector<double> segment_lengths_km(const ChainSpec& chain);

// Transmittance of one segment.
double segment_transmittance(const ChainSpec& chain, std::size_t segment);

// Result of bounding a general network.
struct BoundReport {
  double raw_min_cut_bits = 0.0;   // min cut of uses-weighted esq capacities
  double adjusted_bits = 0.0;      // after the epsilon correction
  Cut witness_cut;
  std::optional<double> per_use_bits;  // adjusted/total_uses, when total is known (> 0)
  double epsilon = 0.0;
};

// Min-cut upper bound on the total secret-key/entanglement yield of the
// network under the given use profile, epsilon-adjusted.
BoundReport network_bound(const Network& network, const UseProfile& profile,
                          const EpsilonParams& eps);

// Equal-spacing chain, bits per total channel use:
//   esq(eta_segment) / (num_intermediate + 1).
// Requires spacings_km to be absent (see uneven_chain_bound_per_use).
double chain_bound_per_use(const ChainSpec& chain);

// Total yield over total_uses uses of the equal-spacing chain,
// epsilon-adjusted: epsilon_adjust(total_uses * chain_bound_per_use).
double chain_bound_total(const ChainSpec& chain, double total_uses,
                         const EpsilonParams& eps);

// Harmonic combination 1 / sum_j (1 / esq_j) over the given per-segment
// bounds, in the order given. Infinite entries contribute nothing; a zero
// entry pins the result to zero.
double harmonic_bound_from_esq(std::span<const double> segment_esq_bits);

// Best per-use bound of a chain with arbitrary segment lengths, optimizing
// how channel uses are split across segments: 1 / sum_j (1/esq_j). Reduces
// exactly to chain_bound_per_use when all segments have equal esq.
double uneven_chain_bound_per_use(const ChainSpec& chain);

// Small-transmittance asymptote of chain_bound_per_use:
//   2 * mode_factor * eta_segment / ((num_intermediate + 1) * ln 2).
// Requires equal spacing; within 0.1% of the exact value for eta <= 1e-3.
double small_eta_chain_approx(const ChainSpec& chain);

// Seconds until the first bit at the given rate (bits per use) and channel
// clock (uses per second).
double time_to_first_bit(double rate_bits_per_use, double clock_hz);

}  // namespace qnetbound
