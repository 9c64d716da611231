// Acceptance gate: one PASS/FAIL line per release criterion, nonzero exit if
// any fail. Each check re-derives its expectations independently of the
// library code under test (long double closed forms, exhaustive enumeration,
// bisection, pattern search), so a PASS is evidence rather than an echo.

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qnetbound/bounds.hpp"
#include "qnetbound/errors.hpp"
#include "qnetbound/netgraph.hpp"
#include "qnetbound/photonics.hpp"
#include "qnetbound/repeater.hpp"
#include "qnetbound/rng.hpp"
#include "qnetbound/routing.hpp"
#include "qnetbound/sweep.hpp"

namespace {

using namespace qnetbound;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) { return format_number(v); }

// 1. The pure-loss channel bound, re-evaluated in long double at random
//    transmittances, matches to 1e-12 relative.
Outcome check_closed_form_points() {
  SplitMix64 rng = SplitMix64::substream(0xACCE01, 0);
  long double worst = 0.0L;
  double worst_eta = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double eta = rng.next_unit_open();
    const int mode_factor = 1 + i % 3;
    const long double got = esq_lossy_bound(eta, mode_factor);
    const long double want = qtest::esq_oracle(eta, mode_factor);
    const long double rel = fabsl(got - want) / want;
    if (rel > worst) {
      worst = rel;
      worst_eta = eta;
    }
  }
  Outcome outcome;
  outcome.pass = worst <= 1.0e-12L;
  std::ostringstream detail;
  detail << "20 random transmittances, worst relative error "
         << num(static_cast<double>(worst)) << " (at eta=" << num(worst_eta) << ")";
  outcome.detail = detail.str();
  return outcome;
}

// 2. Across the 50..1000 km sweep the cut bound dominates the simulated
//    protocol's closed-form rate on every row, and in the deep-loss regime
//    (segment transmittance <= 1e-3) their ratio settles at 4/ln2 within 1%.
Outcome check_sweep_dominance() {
  SweepSpec spec;
  spec.l_min_km = 50.0;
  spec.l_max_km = 1000.0;
  spec.step_km = 10.0;
  spec.n_values = {0, 1, 2, 4, 8};
  spec.attenuation_length_km = db_to_attenuation_length(0.2);
  const std::vector<SweepRow> rows = sweep_rows(spec);

  int violations = 0;
  int deep_rows = 0;
  double worst_ratio_dev = 0.0;
  const double limit_ratio = 4.0 / std::numbers::ln2;
  for (const SweepRow& row : rows) {
    if (!(row.bound_per_use >= row.achievable_per_use)) {
      ++violations;
    }
    if (row.eta_segment <= 1.0e-3) {
      ++deep_rows;
      const double ratio = row.bound_per_use / row.achievable_per_use;
      worst_ratio_dev = std::max(worst_ratio_dev,
                                 std::abs(ratio - limit_ratio) / limit_ratio);
    }
  }

  Outcome outcome;
  outcome.pass = rows.size() == 480 && violations == 0 && deep_rows > 0 &&
                 worst_ratio_dev <= 0.01;
  std::ostringstream detail;
  detail << rows.size() << " rows, " << violations << " dominance violations; "
         << deep_rows << " deep-loss rows, ratio off 4/ln2 by at most "
         << num(worst_ratio_dev);
  outcome.detail = detail.str();
  return outcome;
}

// 3. Max-flow min-cut agrees with brute-force enumeration of every
//    bipartition on 200 random networks (lossless and unused edges included).
Outcome check_min_cut_enumeration() {
  SplitMix64 rng = SplitMix64::substream(0xACCE03, 0);
  const qtest::RandomNetOptions opt;
  int mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const qtest::RandomNet rn = qtest::random_network(rng, opt);
    const MinCutResult got = min_cut(rn.net, rn.profile);
    const MinCutResult want = enumerate_cuts_oracle(rn.net, rn.profile);
    const bool value_ok = qtest::rel_close(got.value, want.value, 1.0e-9);
    const bool witness_ok =
        qtest::rel_close(cut_value(rn.net, got.witness, rn.profile), got.value, 1.0e-9);
    if (!value_ok || !witness_ok) {
      ++mismatches;
    }
    if (!std::isinf(got.value) && !std::isinf(want.value)) {
      worst = std::max(worst, qtest::rel_err(got.value, want.value));
    }
  }
  Outcome outcome;
  outcome.pass = mismatches == 0;
  std::ostringstream detail;
  detail << "200 random networks, " << mismatches
         << " mismatches, worst finite relative gap " << num(worst);
  outcome.detail = detail.str();
  return outcome;
}

// 4. The Monte-Carlo protocol at n=3, 200 km reproduces its closed-form rate
//    and per-link expectations within 2%, and reruns are bit-identical.
Outcome check_simulation_calibration() {
  SimConfig config;
  config.chain.total_length_km = 200.0;
  config.chain.num_intermediate = 3;
  config.chain.loss_db_per_km = 0.2;
  config.trials = 100000;
  config.seed = 20240801;

  const SimResult sim = simulate(config);
  const double analytic = analytic_repeater_rate(config.chain);
  const double rate_gap = std::abs(sim.rate_per_use - analytic) / analytic;

  const double eta = segment_transmittance(config.chain, 0);
  double worst_link_gap = 0.0;
  for (double mean : sim.per_link_mean_uses) {
    worst_link_gap = std::max(worst_link_gap, std::abs(mean - 1.0 / eta) * eta);
  }

  const SimResult rerun = simulate(config);
  const bool deterministic = rerun.rate_per_use == sim.rate_per_use &&
                             rerun.total_channel_uses == sim.total_channel_uses &&
                             rerun.per_link_mean_uses == sim.per_link_mean_uses;

  Outcome outcome;
  outcome.pass = sim.per_link_mean_uses.size() == 4 && rate_gap <= 0.02 &&
                 worst_link_gap <= 0.02 && deterministic;
  std::ostringstream detail;
  detail << "rate " << num(sim.rate_per_use) << " vs " << num(analytic) << " (gap "
         << num(rate_gap) << "), worst per-link gap " << num(worst_link_gap)
         << ", rerun " << (deterministic ? "identical" : "DIFFERS");
  outcome.detail = detail.str();
  return outcome;
}

// 5. For unevenly spaced chains the harmonic formula equals an independent
//    bisection search over channel-use allocations, and pattern search over
//    spacings never beats equal spacing.
Outcome check_uneven_chains() {
  SplitMix64 rng = SplitMix64::substream(0xACCE05, 0);
  double worst = 0.0;
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = static_cast<int>(qtest::below(rng, 6));
    std::vector<double> spacings(static_cast<std::size_t>(n) + 1);
    double total = 0.0;
    for (double& s : spacings) {
      s = 5.0 + 95.0 * qtest::unit(rng);
      total += s;
    }
    ChainSpec chain;
    chain.total_length_km = total;
    chain.num_intermediate = n;
    chain.spacings_km = spacings;
    chain.attenuation_length_km = 15.0 + 30.0 * qtest::unit(rng);

    std::vector<double> esqs;
    for (double s : spacings) {
      esqs.push_back(esq_lossy_bound(
          transmittance_over(s, *chain.attenuation_length_km), chain.mode_factor));
    }
    const double got = uneven_chain_bound_per_use(chain);
    const double want = qtest::allocation_max_oracle(esqs);
    const double rel = qtest::rel_err(got, want);
    worst = std::max(worst, rel);
    if (rel > 1.0e-6) {
      ++mismatches;
    }
  }

  const double l_att = db_to_attenuation_length(0.2);
  double worst_excess = 0.0;
  for (const auto& [length, n] : std::vector<std::pair<double, int>>{
           {200.0, 1}, {300.0, 2}, {400.0, 3}}) {
    ChainSpec equal;
    equal.total_length_km = length;
    equal.num_intermediate = n;
    equal.attenuation_length_km = l_att;
    const double equal_bound = chain_bound_per_use(equal);
    const double best = qtest::spacing_search_best(length, n, l_att, rng, 4);
    worst_excess = std::max(worst_excess, best / equal_bound - 1.0);
  }

  Outcome outcome;
  outcome.pass = mismatches == 0 && worst <= 1.0e-6 && worst_excess <= 1.0e-4;
  std::ostringstream detail;
  detail << "50 allocations, worst relative gap " << num(worst)
         << "; spacing search beats equal spacing by at most " << num(worst_excess);
  outcome.detail = detail.str();
  return outcome;
}

// 6. Direct (repeaterless) transmission over 1000 km of standard fiber:
//    first bit takes decades. At the fastest clock in the 1..10 GHz range the
//    wait lands between one decade and two centuries, and every slower clock
//    in the range only waits longer.
Outcome check_long_haul_wait() {
  const double l_att = db_to_attenuation_length(0.2);
  const double rate = esq_lossy_bound(transmittance_over(1000.0, l_att),
                                      kDefaultModeFactor);
  const double year_s = 365.25 * 86400.0;
  const double years_fast = time_to_first_bit(rate, 1.0e10) / year_s;
  const double years_slow = time_to_first_bit(rate, 1.0e9) / year_s;

  Outcome outcome;
  outcome.pass = years_fast >= 10.0 && years_fast <= 200.0 && years_slow >= years_fast;
  std::ostringstream detail;
  detail << num(years_fast) << " years at 10 GHz, " << num(years_slow)
         << " years at 1 GHz (rate " << num(rate) << " bits/use)";
  outcome.detail = detail.str();
  return outcome;
}

// 7. The finite-accuracy adjustment: exact identity at epsilon 0, strictly
//    increasing in epsilon, and rejecting everything at or past 1/256.
Outcome check_epsilon_adjustment() {
  bool identity = true;
  for (double raw : {0.0, 0.7, 3.1699250014423124, qtest::kInf}) {
    identity = identity && epsilon_adjust(raw, EpsilonParams{0.0}) == raw;
  }
  identity = identity && epsilon_prefactor(EpsilonParams{0.0}) == 1.0;

  bool monotone = true;
  double previous = epsilon_adjust(1.0, EpsilonParams{0.0});
  for (int i = 1; i < 64; ++i) {
    const double eps = static_cast<double>(i) * (1.0 / 256.0) / 64.0;
    const double adjusted = epsilon_adjust(1.0, EpsilonParams{eps});
    monotone = monotone && adjusted > previous;
    previous = adjusted;
  }

  int rejected = 0;
  for (double eps : {1.0 / 256.0, 0.01, -1.0e-9, 0.5}) {
    try {
      epsilon_adjust(1.0, EpsilonParams{eps});
    } catch (const SpecError&) {
      ++rejected;
    }
  }

  Outcome outcome;
  outcome.pass = identity && monotone && rejected == 4;
  std::ostringstream detail;
  detail << "identity " << (identity ? "exact" : "BROKEN") << ", strictly monotone "
         << (monotone ? "yes" : "NO") << ", " << rejected << "/4 out-of-domain rejected";
  outcome.detail = detail.str();
  return outcome;
}

// 8. On 100 random connected networks of at most 8 nodes, the routed path
//    matches exhaustive enumeration of all simple paths, and its per-use
//    bound never exceeds the min-cut bound per use.
Outcome check_routing_optimality() {
  SplitMix64 rng = SplitMix64::substream(0xACCE08, 0);
  qtest::RandomNetOptions opt;
  opt.max_intermediate = 6;
  opt.max_edges = 16;
  opt.ensure_connected = true;
  opt.allow_lossless = false;
  opt.allow_zero_uses = false;
  opt.explicit_uses = false;

  int mismatches = 0;
  int cut_violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const qtest::RandomNet rn = qtest::random_network(rng, opt);
    const Route route = best_path(rn.net);
    const std::optional<double> oracle = qtest::best_path_oracle(rn.net);
    if (!oracle || !qtest::rel_close(route.per_use_bound_bits, *oracle, 1.0e-9)) {
      ++mismatches;
      continue;
    }
    worst = std::max(worst, qtest::rel_err(route.per_use_bound_bits, *oracle));

    // Spend the use budget optimally along the chosen path; the min cut of
    // that profile caps anything any strategy could distribute.
    UseProfile profile;
    for (std::size_t e = 0; e < rn.net.edges.size(); ++e) {
      profile.uses[e] = 0.0;
    }
    double inverse_sum = 0.0;
    for (std::size_t e : route.edge_indices) {
      const ChannelSpec& spec = rn.net.edges[e];
      inverse_sum += 1.0 / esq_lossy_bound(transmittance(spec), spec.mode_factor);
    }
    double total = 0.0;
    for (std::size_t e : route.edge_indices) {
      const ChannelSpec& spec = rn.net.edges[e];
      const double share =
          (1.0 / esq_lossy_bound(transmittance(spec), spec.mode_factor)) / inverse_sum;
      profile.uses[e] = share;
      total += share;
    }
    profile.total_uses = total;
    const MinCutResult cut = min_cut(rn.net, profile);
    const double per_use_cap = cut.value / total;
    if (route.per_use_bound_bits > per_use_cap * (1.0 + 1.0e-9) + 1.0e-12) {
      ++cut_violations;
    }
  }

  Outcome outcome;
  outcome.pass = mismatches == 0 && cut_violations == 0;
  std::ostringstream detail;
  detail << "100 networks, " << mismatches << " path mismatches (worst gap "
         << num(worst) << "), " << cut_violations << " cut-bound violations";
  outcome.detail = detail.str();
  return outcome;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const std::vector<Criterion> criteria = {
      {"closed-form channel bound matches high-precision re-evaluation",
       check_closed_form_points},
      {"cut bound dominates the repeater protocol across the length sweep",
       check_sweep_dominance},
      {"min-cut agrees with exhaustive cut enumeration", check_min_cut_enumeration},
      {"repeater simulation reproduces its closed-form rate", check_simulation_calibration},
      {"uneven-chain bound equals allocation search; equal spacing is optimal",
       check_uneven_chains},
      {"direct 1000 km transmission waits decades for its first bit",
       check_long_haul_wait},
      {"accuracy adjustment: identity at zero, monotone, bounded domain",
       check_epsilon_adjustment},
      {"routing matches exhaustive path search and respects the cut bound",
       check_routing_optimality},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].fn();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("[%zu/%zu] %s  %s\n", i + 1, criteria.size(),
                outcome.pass ? "PASS" : "FAIL", criteria[i].name);
    if (!outcome.detail.empty()) {
      std::printf("        %s\n", outcome.detail.c_str());
    }
    if (!outcome.pass) {
      ++failed;
    }
  }

  if (failed == 0) {
    std::printf("all %zu acceptance checks passed\n", criteria.size());
    return 0;
  }
  std::printf("%d acceptance check(s) FAILED\n", failed);
  return 1;
}
