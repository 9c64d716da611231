#include "qnetbound/bounds.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "qnetbound/errors.hpp"

namespace qnetbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_equal_spacing(const ChainSpec& chain, const char* op) {
  if (chain.spacings_km) {
    throw SpecError(std::string(op) +
                    " assumes equal spacing; use uneven_chain_bound_per_use for "
                    "explicit spacings");
  }
}

}  // namespace

void validate(const ChainSpec& chain) {
  if (!std::isfinite(chain.total_length_km) || chain.total_length_km <= 0.0) {
    throw SpecError("chain: total_length_km must be finite and positive");
  }
  if (chain.num_intermediate < 0) {
    throw SpecError("chain: num_intermediate must be nonnegative");
  }
  if (chain.mode_factor < 1) {
    throw SpecError("chain: mode_factor must be a positive integer");
  }
  if (chain.attenuation_length_km && chain.loss_db_per_km) {
    throw SpecError("chain: attenuation given both as attenuation_length_km and "
                    "loss_db_per_km");
  }
  if (!chain.attenuation_length_km && !chain.loss_db_per_km) {
    throw SpecError("chain: no attenuation information");
  }
  if (chain.attenuation_length_km &&
      (!std::isfinite(*chain.attenuation_length_km) || *chain.attenuation_length_km <= 0.0)) {
    throw SpecError("chain: attenuation_length_km must be finite and positive");
  }
  if (chain.loss_db_per_km &&
      (!std::isfinite(*chain.loss_db_per_km) || *chain.loss_db_per_km <= 0.0)) {
    throw SpecError("chain: loss_db_per_km must be finite and positive");
  }
  if (chain.spacings_km) {
    const auto& s = *chain.spacings_km;
    const std::size_t want = static_cast<std::size_t>(chain.num_intermediate) + 1;
    if (s.size() != want) {
      throw SpecError("chain: expected " + std::to_string(want) + " spacings, got " +
                      std::to_string(s.size()));
    }
    double sum = 0.0;
    for (double seg : s) {
      if (!std::isfinite(seg) || seg <= 0.0) {
        throw SpecError("chain: every spacing must be finite and positive");
      }
      sum += seg;
    }
    const double tol = 1e-9 * std::max(std::abs(sum), std::abs(chain.total_length_km));
    if (std::abs(sum - chain.total_length_km) > std::max(tol, 1e-12)) {
      throw SpecError("chain: spacings must sum to total_length_km");
    }
  }
}

double chain_attenuation_length_km(const ChainSpec& chain) {
  validate(chain);
  return chain.attenuation_length_km ? *chain.attenuation_length_km
                                     : db_to_attenuation_length(*chain.loss_db_per_km);
}

std::vector<double> segment_lengths_km(const ChainSpec& chain) {
  validate(chain);
  if (chain.spacings_km) {
    return *chain.spacings_km;
  }
  const std::size_t count = static_cast<std::size_t>(chain.num_intermediate) + 1;
  return std::vector<double>(count, chain.total_length_km / static_cast<double>(count));
}

double segment_transmittance(const ChainSpec& chain, std::size_t segment) {
  const std::vector<double> segments = segment_lengths_km(chain);
  if (segment >= segments.size()) {
    throw SpecError("chain: segment index out of range");
  }
  return transmittance_over(segments[segment], chain_attenuation_length_km(chain));
}

BoundReport network_bound(const Network& network, const UseProfile& profile,
                          const EpsilonParams& eps) {
  validate(eps);
  const MinCutResult mc = min_cut(network, profile);
  BoundReport report;
  report.raw_min_cut_bits = mc.value;
  report.adjusted_bits = epsilon_adjust(mc.value, eps);
  report.witness_cut = mc.witness;
  report.epsilon = eps.epsilon;
  if (profile.total_uses && *profile.total_uses > 0.0) {
    report.per_use_bits = report.adjusted_bits / *profile.total_uses;
  }
  return report;
}

double chain_bound_per_use(const ChainSpec& chain) {
  validate(chain);
  require_equal_spacing(chain, "chain_bound_per_use");
  const double segments = static_cast<double>(chain.num_intermediate) + 1.0;
  const double eta = transmittance_over(chain.total_length_km / segments,
                                        chain_attenuation_length_km(chain));
  return esq_lossy_bound(eta, chain.mode_factor) / segments;
}

double chain_bound_total(const ChainSpec& chain, double total_uses,
                         const EpsilonParams& eps) {
  if (!std::isfinite(total_uses) || total_uses < 0.0) {
    throw SpecError("total_uses must be finite and nonnegative");
  }
  // Guard the 0 * inf corner: zero uses of any chain yield exactly nothing.
  const double raw = total_uses == 0.0 ? 0.0 : total_uses * chain_bound_per_use(chain);
  return epsilon_adjust(raw, eps);
}

double harmonic_bound_from_esq(std::span<const double> segment_esq_bits) {
  if (segment_esq_bits.empty()) {
    throw SpecError("harmonic bound needs at least one segment");
  }
  double sum = 0.0;
  for (double esq : segment_esq_bits) {
    if (std::isnan(esq) || esq < 0.0) {
      throw SpecError("segment bounds must be nonnegative");
    }
    sum += 1.0 / esq;  // 1/inf = 0, 1/0 = inf; both carry the right meaning
  }
  return 1.0 / sum;
}

double uneven_chain_bound_per_use(const ChainSpec& chain) {
  const std::vector<double> segments = segment_lengths_km(chain);
  const double l_att = chain_attenuation_length_km(chain);
  std::vector<double> esq(segments.size());
  for (std::size_t j = 0; j < segments.size(); ++j) {
    esq[j] = esq_lossy_bound(transmittance_over(segments[j], l_att), chain.mode_factor);
  }
  // Equal segments reduce exactly (not just to rounding) to esq/(n+1).
  bool all_equal = true;
  for (double e : esq) {
    all_equal = all_equal && e == esq.front();
  }
  if (all_equal) {
    return esq.front() / static_cast<double>(segments.size());
  }
  return harmonic_bound_from_esq(esq);
}

double small_eta_chain_approx(const ChainSpec& chain) {
  validate(chain);
  require_equal_spacing(chain, "small_eta_chain_approx");
  const double segments = static_cast<double>(chain.num_intermediate) + 1.0;
  const double eta = transmittance_over(chain.total_length_km / segments,
                                        chain_attenuation_length_km(chain));
  return 2.0 * static_cast<double>(chain.mode_factor) * eta /
         (segments * std::numbers::ln2);
}

double time_to_first_bit(double rate_bits_per_use, double clock_hz) {
  if (!std::isfinite(clock_hz) || clock_hz <= 0.0) {
    throw SpecError("clock_hz must be finite and positive");
  }
  if (std::isnan(rate_bits_per_use) || rate_bits_per_use <= 0.0) {
    throw SpecError("rate must be positive");
  }
  return 1.0 / (rate_bits_per_use * clock_hz);
}

}  // namespace qnetbound
