#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qnetbound/bounds.hpp"
#include "qnetbound/rng.hpp"

namespace qnetbound {

// Monte-Carlo configuration for the idealized repeater protocol: every link
// of the chain repeats heralded entanglement attempts until success, swaps
// are perfect and instantaneous, so one trial ends after the slowest link.
struct SimConfig {
  ChainSpec chain;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
};

struct SimResult {
  std::int64_t trials = 0;
  // Channel uses are tallied in doubles: counts overflow 64-bit integers
  // long before they stop being exactly representable sums of small ints.
  double total_channel_uses = 0.0;
  std::int64_t ebits = 0;  // one end-to-end entangled pair per trial
  double rate_per_use = 0.0;
  double stderr_rate = 0.0;  // delta-method error of the ratio estimator
  std::vector<double> per_link_mean_uses;
};

// Number of attempts until the first success of a heralded link with success
// probability eta, drawn by geometric inverse-CDF sampling in O(1):
// ceil(ln u / ln(1 - eta)) for u uniform on (0,1). Returns a double carrying
// an integral value (the count is astronomically large for tiny eta).
// eta = 1 returns 1 without consuming randomness; eta <= 0 never succeeds
// and is an error.
double sample_link_attempts(SplitMix64& rng, double eta);

// Run the protocol config.trials times. Deterministic for a fixed seed,
// regardless of thread count: trial t always draws from
// SplitMix64::substream(seed, t), links in chain order.
SimResult simulate(const SimConfig& config);

// Expected rate of the idealized protocol, bits per total channel use:
// eta_segment / (num_intermediate + 1). Requires equal spacing.
double analytic_repeater_rate(const ChainSpec& chain);

// Reference envelopes the repeater chain is compared against.
enum class ScalingModel {
  point_to_point,  // c * eta(L): direct transmission
  intercity,       // c * eta(L/2) = c * sqrt(eta(L)): one midpoint station
};

ScalingModel scaling_model_from_name(std::string_view name);

double scaling_model_rate(ScalingModel model, double total_length_km,
                          double attenuation_length_km, double prefactor);

}  // namespace qnetbound
