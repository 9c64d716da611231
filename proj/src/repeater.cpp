#include "qnetbound/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "parallel.hpp"
#include "qnetbound/errors.hpp"

namespace qnetbound {

namespace {

// Trials per work chunk. Fixed (never derived from the thread count) so the
// chunk boundaries, and therefore every merged statistic, are identical no
// matter how many workers run.
constexpr std::int64_t kChunkTrials = 8192;

struct ChunkAccum {
  internal::Moments trial_uses;
  std::vector<internal::CompensatedSum> link_uses;
};

}  // namespace

double sample_link_attempts(SplitMix64& rng, double eta) {
  if (std::isnan(eta) || eta <= 0.0 || eta > 1.0) {
    throw SpecError("link transmittance must lie in (0,1]: a link with eta <= 0 "
                    "never succeeds");
  }
  if (eta == 1.0) {
    return 1.0;
  }
  const double u = rng.next_unit_open();
  // Geometric inverse CDF. u in (0,1) keeps both logs finite and negative.
  const double attempts = std::ceil(std::log(u) / std::log1p(-eta));
  return attempts >= 1.0 ? attempts : 1.0;
}

SimResult simulate(const SimConfig& config) {
  validate(config.chain);
  if (config.trials < 1) {
    throw SpecError("trials must be at least 1");
  }

  const std::vector<double> segments = segment_lengths_km(config.chain);
  const double l_att = chain_attenuation_length_km(config.chain);
  std::vector<double> etas(segments.size());
  for (std::size_t j = 0; j < segments.size(); ++j) {
    etas[j] = transmittance_over(segments[j], l_att);
    if (etas[j] <= 0.0) {
      throw SpecError("chain: segment " + std::to_string(j) +
                      " has zero transmittance; its link can never herald success");
    }
  }

  const std::size_t links = etas.size();
  const std::int64_t trials = config.trials;
  const std::int64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;

  std::vector<ChunkAccum> partial(static_cast<std::size_t>(chunks));
  internal::run_chunks(chunks, [&](std::int64_t c) {
    ChunkAccum& acc = partial[static_cast<std::size_t>(c)];
    acc.link_uses.resize(links);
    const std::int64_t begin = c * kChunkTrials;
    const std::int64_t end = std::min(trials, begin + kChunkTrials);
    for (std::int64_t t = begin; t < end; ++t) {
      SplitMix64 rng = SplitMix64::substream(config.seed, static_cast<std::uint64_t>(t));
      double trial_total = 0.0;
      for (std::size_t j = 0; j < links; ++j) {
        const double m = sample_link_attempts(rng, etas[j]);
        acc.link_uses[j].add(m);
        trial_total += m;
      }
      acc.trial_uses.add(trial_total);
    }
  });

  // Merge partials in chunk order: the reduction below is the only place
  // where results from different threads meet, and it is a fixed sequence.
  internal::Moments trial_uses;
  std::vector<internal::CompensatedSum> link_totals(links);
  for (const ChunkAccum& acc : partial) {
    trial_uses.merge(acc.trial_uses);
    for (std::size_t j = 0; j < links; ++j) {
      link_totals[j].add(acc.link_uses[j].value());
    }
  }

  SimResult result;
  result.trials = trials;
  result.ebits = trials;
  internal::CompensatedSum grand;
  result.per_link_mean_uses.resize(links);
  for (std::size_t j = 0; j < links; ++j) {
    const double total_j = link_totals[j].value();
    grand.add(total_j);
    result.per_link_mean_uses[j] = total_j / static_cast<double>(trials);
  }
  result.total_channel_uses = grand.value();
  result.rate_per_use = static_cast<double>(trials) / result.total_channel_uses;

  // Delta method for 1/mean(U): se = var(U)^(1/2) / (sqrt(N) * mean(U)^2),
  // i.e. rate^2 * sd(U) / sqrt(N). NaN when a single trial leaves no spread.
  const double variance = trial_uses.sample_variance();
  result.stderr_rate = result.rate_per_use * result.rate_per_use *
                       std::sqrt(variance) / std::sqrt(static_cast<double>(trials));
  return result;
}

double analytic_repeater_rate(const ChainSpec& chain) {
  validate(chain);
  if (chain.spacings_km) {
    throw SpecError("analytic_repeater_rate assumes equal spacing");
  }
  const double segments = static_cast<double>(chain.num_intermediate) + 1.0;
  const double eta = transmittance_over(chain.total_length_km / segments,
                                        chain_attenuation_length_km(chain));
  return eta / segments;
}

ScalingModel scaling_model_from_name(std::string_view name) {
  if (name == "point_to_point") {
    return ScalingModel::point_to_point;
  }
  if (name == "intercity") {
    return ScalingModel::intercity;
  }
  throw SpecError("unknown scaling model '" + std::string(name) +
                  "' (expected point_to_point or intercity)");
}

double scaling_model_rate(ScalingModel model, double total_length_km,
                          double attenuation_length_km, double prefactor) {
  if (!std::isfinite(total_length_km) || total_length_km <= 0.0) {
    throw SpecError("total_length_km must be finite and positive");
  }
  if (!std::isfinite(prefactor) || prefactor <= 0.0) {
    throw SpecError("prefactor must be finite and positive");
  }
  switch (model) {
    case ScalingModel::point_to_point:
      return prefactor * transmittance_over(total_length_km, attenuation_length_km);
    case ScalingModel::intercity:
      return prefactor * transmittance_over(total_length_km / 2.0, attenuation_length_km);
  }
  throw SpecError("unknown scaling model");
}

}  // namespace qnetbound
