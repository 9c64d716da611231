#pragma once

#include <optional>
#include <string>

namespace qnetbound {

// One optical pulse carries two polarization modes.
inline constexpr int kDefaultModeFactor = 2;

// One lossy optical channel between two named nodes. Attenuation is given
// either as an attenuation length or as fiber loss in dB/km; a transmittance
// override bypasses the length/attenuation model entirely (override wins).
struct ChannelSpec {
  std::string from_node;
  std::string to_node;
  double length_km = 0.0;
  std::optional<double> attenuation_length_km;
  std::optional<double> loss_db_per_km;
  int mode_factor = kDefaultModeFactor;
  std::optional<double> transmittance_override;
};

// Accuracy parameter of the adjusted rate bound. Valid range is
// [0, 1/256): beyond that 16*sqrt(epsilon) reaches 1 and the adjusted
// bound loses meaning.
struct EpsilonParams {
  double epsilon = 0.0;
};

void validate(const ChannelSpec& spec);
void validate(const EpsilonParams& eps);

// l_att such that exp(-L/l_att) equals 10^(-loss_db_per_km*L/10).
// Standard telecom fiber at 0.2 dB/km gives about 21.71 km.
double db_to_attenuation_length(double loss_db_per_km);
double attenuation_length_to_db(double attenuation_length_km);

// Fraction of input photons surviving one pass, eta = exp(-L/l_att).
double transmittance_over(double length_km, double attenuation_length_km);
double transmittance(const ChannelSpec& spec);

// Squashed-entanglement upper bound on the secret-key/entanglement rate of a
// pure-loss channel, in bits per channel use:
//   mode_factor * log2((1+eta)/(1-eta)).
// Diverges to +inf at eta = 1. Evaluated via log1p so that the eta -> 0 tail
// keeps full relative precision (the naive quotient collapses to 1 once
// 1 + eta rounds to 1).
double esq_lossy_bound(double eta, int mode_factor);

// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

// 1 / (1 - 16 sqrt(epsilon)), the amortized per-use inflation of the
// adjusted bound. Exactly 1 at epsilon = 0.
double epsilon_prefactor(const EpsilonParams& eps);

// Finite-accuracy correction of a raw rate bound:
//   (raw + 4 h(2 sqrt(eps))) / (1 - 16 sqrt(eps)).
// Identity at eps = 0, nondecreasing in eps.
double epsilon_adjust(double raw_bound, const EpsilonParams& eps);

}  // namespace qnetbound
