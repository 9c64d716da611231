#include "qnetbound/photonics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qnetbound/errors.hpp"

namespace qnetbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string edge_tag(const ChannelSpec& spec) {
  return "channel " + spec.from_node + "->" + spec.to_node;
}

}  // namespace

void validate(const ChannelSpec& spec) {
  if (spec.from_node == spec.to_node) {
    throw SpecError(edge_tag(spec) + ": self-loop");
  }
  if (!std::isfinite(spec.length_km) || spec.length_km < 0.0) {
    throw SpecError(edge_tag(spec) + ": length_km must be finite and nonnegative");
  }
  if (spec.mode_factor < 1) {
    throw SpecError(edge_tag(spec) + ": mode_factor must be a positive integer");
  }
  if (spec.attenuation_length_km &&
      (!std::isfinite(*spec.attenuation_length_km) || *spec.attenuation_length_km <= 0.0)) {
    throw SpecError(edge_tag(spec) + ": attenuation_length_km must be finite and positive");
  }
  if (spec.loss_db_per_km &&
      (!std::isfinite(*spec.loss_db_per_km) || *spec.loss_db_per_km <= 0.0)) {
    throw SpecError(edge_tag(spec) + ": loss_db_per_km must be finite and positive");
  }
  if (spec.transmittance_override) {
    const double eta = *spec.transmittance_override;
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw SpecError(edge_tag(spec) + ": transmittance must lie in [0,1]");
    }
    return;  // override wins; attenuation fields are not consulted
  }
  if (spec.attenuation_length_km && spec.loss_db_per_km) {
    throw SpecError(edge_tag(spec) +
                    ": attenuation given both as attenuation_length_km and loss_db_per_km");
  }
  if (!spec.attenuation_length_km && !spec.loss_db_per_km) {
    throw SpecError(edge_tag(spec) + ": no attenuation information");
  }
}

void validate(const EpsilonParams& eps) {
  if (!std::isfinite(eps.epsilon) || eps.epsilon < 0.0 ||
      16.0 * std::sqrt(eps.epsilon) >= 1.0) {
    throw SpecError("epsilon must lie in [0, 1/256): the adjusted bound needs "
                    "16*sqrt(epsilon) < 1");
  }
}

double db_to_attenuation_length(double loss_db_per_km) {
  if (!std::isfinite(loss_db_per_km) || loss_db_per_km <= 0.0) {
    throw SpecError("loss_db_per_km must be finite and positive");
  }
  // exp(-L/l_att) = 10^(-a L / 10)  =>  l_att = 10 / (a ln 10)
  return 10.0 / (loss_db_per_km * std::numbers::ln10);
}

double attenuation_length_to_db(double attenuation_length_km) {
  if (!std::isfinite(attenuation_length_km) || attenuation_length_km <= 0.0) {
    throw SpecError("attenuation_length_km must be finite and positive");
  }
  return 10.0 / (attenuation_length_km * std::numbers::ln10);
}

double transmittance_over(double length_km, double attenuation_length_km) {
  if (!std::isfinite(length_km) || length_km < 0.0) {
    throw SpecError("length_km must be finite and nonnegative");
  }
  if (!std::isfinite(attenuation_length_km) || attenuation_length_km <= 0.0) {
    throw SpecError("attenuation_length_km must be finite and positive");
  }
  return std::exp(-length_km / attenuation_length_km);
}

double transmittance(const ChannelSpec& spec) {
  validate(spec);
  if (spec.transmittance_override) {
    return *spec.transmittance_override;
  }
  const double l_att = spec.attenuation_length_km
                           ? *spec.attenuation_length_km
                           : db_to_attenuation_length(*spec.loss_db_per_km);
  return transmittance_over(spec.length_km, l_att);
}

double esq_lossy_bound(double eta, int mode_factor) {
  if (mode_factor < 1) {
    throw SpecError("mode_factor must be a positive integer");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw SpecError("transmittance must lie in [0,1]");
  }
  if (eta == 1.0) {
    return kInf;
  }
  // Parenthesized so the mode factor scales the one-mode figure exactly.
  return static_cast<double>(mode_factor) *
         ((std::log1p(eta) - std::log1p(-eta)) / std::numbers::ln2);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw SpecError("binary entropy argument must lie in [0,1]");
  }
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  // log1p keeps the (1-x) term accurate for small x.
  return -x * std::log2(x) - (1.0 - x) * (std::log1p(-x) / std::numbers::ln2);
}

double epsilon_prefactor(const EpsilonParams& eps) {
  validate(eps);
  return 1.0 / (1.0 - 16.0 * std::sqrt(eps.epsilon));
}

double epsilon_adjust(double raw_bound, const EpsilonParams& eps) {
  validate(eps);
  if (!(raw_bound >= 0.0)) {
    throw SpecError("raw bound must be nonnegative");
  }
  const double root = std::sqrt(eps.epsilon);
  return (raw_bound + 4.0 * binary_entropy(2.0 * root)) / (1.0 - 16.0 * root);
}

}  // namespace qnetbound
