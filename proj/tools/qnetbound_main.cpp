// qnetbound: cut bounds on secret-key/entanglement rates over lossy optical
// networks, plus a Monte-Carlo simulation of the idealized repeater protocol
// those bounds are compared against.

#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnetbound/bounds.hpp"
#include "qnetbound/errors.hpp"
#include "qnetbound/netgraph.hpp"
#include "qnetbound/network_io.hpp"
#include "qnetbound/photonics.hpp"
#include "qnetbound/repeater.hpp"
#include "qnetbound/routing.hpp"
#include "qnetbound/sweep.hpp"

namespace {

using namespace qnetbound;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStandardFiberDbPerKm = 0.2;

// One attenuation choice shared by every chain-shaped subcommand.
struct AttenuationOpts {
  double loss_db_per_km = 0.0;
  double attenuation_length_km = 0.0;
  bool standard_fiber = false;
  CLI::Option* loss_opt = nullptr;
  CLI::Option* att_opt = nullptr;
};

void add_attenuation_options(CLI::App* cmd, AttenuationOpts& opts) {
  auto* group = cmd->add_option_group("attenuation", "fiber attenuation (exactly one)");
  opts.loss_opt =
      group->add_option("--loss-db-per-km", opts.loss_db_per_km, "fiber loss in dB/km");
  opts.att_opt = group->add_option("--att-length-km", opts.attenuation_length_km,
                                   "attenuation length in km");
  group->add_flag("--standard-fiber", opts.standard_fiber,
                  "standard telecom fiber, 0.2 dB/km");
  group->require_option(1);
}

void apply_attenuation(const AttenuationOpts& opts, ChainSpec& chain) {
  if (opts.standard_fiber) {
    chain.loss_db_per_km = kStandardFiberDbPerKm;
  } else if (opts.loss_opt->count() > 0) {
    chain.loss_db_per_km = opts.loss_db_per_km;
  } else {
    chain.attenuation_length_km = opts.attenuation_length_km;
  }
}

double resolved_attenuation_length(const AttenuationOpts& opts) {
  if (opts.standard_fiber) {
    return db_to_attenuation_length(kStandardFiberDbPerKm);
  }
  if (opts.loss_opt->count() > 0) {
    return db_to_attenuation_length(opts.loss_db_per_km);
  }
  return opts.attenuation_length_km;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += format_number(values[i]);
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += ids[i];
  }
  return out;
}

void print_kv(const char* key, double value) {
  std::cout << key << '=' << format_number(value) << '\n';
}

struct BoundChainOpts {
  double length_km = 0.0;
  int nodes_n = 0;
  std::vector<double> spacings;
  AttenuationOpts att;
  double epsilon = 0.0;
  double uses_total = 0.0;
  CLI::Option* nodes_opt = nullptr;
  CLI::Option* spacings_opt = nullptr;
  CLI::Option* uses_opt = nullptr;
};

// --spacings fixes the station count on its own; an explicit --nodes-n must
// then agree with it (validate(chain) reports the mismatch).
int effective_nodes_n(const CLI::Option* nodes_opt, int nodes_n,
                      const std::vector<double>& spacings) {
  if (nodes_opt->count() == 0 && !spacings.empty()) {
    return static_cast<int>(spacings.size()) - 1;
  }
  return nodes_n;
}

int run_bound_chain(const BoundChainOpts& opts) {
  const EpsilonParams eps{opts.epsilon};
  const bool uneven = opts.spacings_opt->count() > 0;

  // A zero-length chain is lossless end to end: the bound diverges rather
  // than being an error, so report it directly.
  if (opts.length_km == 0.0 && !uneven) {
    validate(eps);
    print_kv("eta_segment", 1.0);
    print_kv("per_use_bits", kInf);
    if (opts.uses_opt->count() > 0) {
      print_kv("total_bits", epsilon_adjust(opts.uses_total == 0.0 ? 0.0 : kInf, eps));
    }
    print_kv("bottleneck_segment", 0.0);
    print_kv("bottleneck_esq_bits", kInf);
    return 0;
  }

  ChainSpec chain;
  chain.total_length_km = opts.length_km;
  chain.num_intermediate = effective_nodes_n(opts.nodes_opt, opts.nodes_n, opts.spacings);
  if (uneven) {
    chain.spacings_km = opts.spacings;
  }
  apply_attenuation(opts.att, chain);
  validate(chain);

  const double prefactor = epsilon_prefactor(eps);
  const double per_use_raw = uneven ? uneven_chain_bound_per_use(chain)
                                    : chain_bound_per_use(chain);
  if (!uneven) {
    print_kv("eta_segment", segment_transmittance(chain, 0));
  }
  print_kv("per_use_bits", per_use_raw * prefactor);
  if (!uneven) {
    print_kv("approx_per_use_bits", small_eta_chain_approx(chain) * prefactor);
  }
  if (opts.uses_opt->count() > 0) {
    if (uneven) {
      const double raw = opts.uses_total == 0.0 ? 0.0 : opts.uses_total * per_use_raw;
      print_kv("total_bits", epsilon_adjust(raw, eps));
    } else {
      print_kv("total_bits", chain_bound_total(chain, opts.uses_total, eps));
    }
  }

  // Weakest segment: the one whose esq the chain is stuck behind.
  const std::vector<double> segments = segment_lengths_km(chain);
  const double l_att = chain_attenuation_length_km(chain);
  std::size_t bottleneck = 0;
  double bottleneck_esq = kInf;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const double esq =
        esq_lossy_bound(transmittance_over(segments[j], l_att), chain.mode_factor);
    if (esq < bottleneck_esq) {
      bottleneck_esq = esq;
      bottleneck = j;
    }
  }
  print_kv("bottleneck_segment", static_cast<double>(bottleneck));
  print_kv("bottleneck_esq_bits", bottleneck_esq);
  return 0;
}

struct BoundNetworkOpts {
  std::string path;
  double epsilon = 0.0;
};

int run_bound_network(const BoundNetworkOpts& opts) {
  const NetworkFile file = load_network_file(opts.path);
  const BoundReport report = network_bound(file.network, file.profile,
                                           EpsilonParams{opts.epsilon});
  print_kv("raw_min_cut_bits", report.raw_min_cut_bits);
  print_kv("adjusted_bits", report.adjusted_bits);
  std::cout << "witness=" << join_ids(report.witness_cut.side_a) << '\n';
  if (report.per_use_bits) {
    print_kv("per_use_bits", *report.per_use_bits);
  }
  return 0;
}

struct SimulateOpts {
  double length_km = 0.0;
  int nodes_n = 0;
  std::vector<double> spacings;
  AttenuationOpts att;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  CLI::Option* nodes_opt = nullptr;
  CLI::Option* spacings_opt = nullptr;
};

int run_simulate(const SimulateOpts& opts) {
  SimConfig config;
  config.chain.total_length_km = opts.length_km;
  config.chain.num_intermediate =
      effective_nodes_n(opts.nodes_opt, opts.nodes_n, opts.spacings);
  const bool uneven = opts.spacings_opt->count() > 0;
  if (uneven) {
    config.chain.spacings_km = opts.spacings;
  }
  apply_attenuation(opts.att, config.chain);
  config.trials = opts.trials;
  config.seed = opts.seed;

  const SimResult result = simulate(config);
  std::cout << "trials=" << result.trials << '\n';
  print_kv("total_channel_uses", result.total_channel_uses);
  std::cout << "ebits=" << result.ebits << '\n';
  print_kv("rate_per_use", result.rate_per_use);
  print_kv("stderr_rate", result.stderr_rate);
  if (!uneven) {
    print_kv("analytic_rate_per_use", analytic_repeater_rate(config.chain));
  }
  const double bound = uneven_chain_bound_per_use(config.chain);
  print_kv("bound_per_use_bits", bound);
  print_kv("ratio_bound_over_mc", bound / result.rate_per_use);
  std::cout << "per_link_mean_uses=" << join_numbers(result.per_link_mean_uses) << '\n';
  return 0;
}

struct SweepOpts {
  SweepSpec spec;
  AttenuationOpts att;
  double clock_hz = 0.0;
  std::int64_t trials = 0;
  std::string out_path;
  CLI::Option* clock_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
};

int run_sweep(SweepOpts& opts) {
  opts.spec.attenuation_length_km = resolved_attenuation_length(opts.att);
  if (opts.trials_opt->count() > 0) {
    opts.spec.trials = opts.trials;
  }
  const std::vector<SweepRow> rows = sweep_rows(opts.spec);
  write_file_atomic(opts.out_path, sweep_csv_text(rows, opts.spec.trials.has_value()));
  std::cout << "rows=" << rows.size() << '\n';
  std::cout << "out=" << opts.out_path << '\n';

  if (opts.clock_opt->count() > 0) {
    // Wait for the first bit at the far end of the sweep, per repeater count.
    for (const SweepRow& row : rows) {
      if (row.length_km != opts.spec.l_max_km) {
        continue;
      }
      std::cout << "time_to_first_bit_s[n=" << row.num_intermediate
                << ",L=" << format_number(row.length_km) << "]=";
      if (row.bound_per_use > 0.0) {
        std::cout << format_number(time_to_first_bit(row.bound_per_use, opts.clock_hz));
      } else {
        std::cout << format_number(kInf);
      }
      std::cout << '\n';
    }
  }
  return 0;
}

struct RouteOpts {
  std::string path;
};

int run_route(const RouteOpts& opts) {
  const NetworkFile file = load_network_file(opts.path);
  const Route route = best_path(file.network);
  std::cout << "path=" << join_ids(route.node_sequence) << '\n';
  std::string edges;
  for (std::size_t i = 0; i < route.edge_indices.size(); ++i) {
    if (i > 0) {
      edges += ',';
    }
    edges += std::to_string(route.edge_indices[i]);
  }
  std::cout << "edges=" << edges << '\n';
  print_kv("per_use_bound_bits", route.per_use_bound_bits);
  return 0;
}

struct ConvertOpts {
  double loss_db_per_km = 0.0;
  double attenuation_length_km = 0.0;
  CLI::Option* loss_opt = nullptr;
};

int run_convert(const ConvertOpts& opts) {
  if (opts.loss_opt->count() > 0) {
    print_kv("attenuation_length_km", db_to_attenuation_length(opts.loss_db_per_km));
  } else {
    print_kv("loss_db_per_km", attenuation_length_to_db(opts.attenuation_length_km));
  }
  return 0;
}

void add_chain_shape_options(CLI::App* cmd, double& length_km, int& nodes_n,
                             std::vector<double>& spacings, CLI::Option*& nodes_opt,
                             CLI::Option*& spacings_opt) {
  cmd->add_option("--length-km", length_km, "end-to-end length in km")->required();
  nodes_opt = cmd->add_option("--nodes-n", nodes_n,
                              "number of intermediate repeater stations");
  spacings_opt = cmd->add_option("--spacings", spacings,
                                 "comma-separated segment lengths in km "
                                 "(overrides equal spacing; one per segment)")
                     ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate bounds and repeater simulation for lossy optical networks"};
  app.require_subcommand(1);

  auto* bound = app.add_subcommand("bound", "upper-bound the secret-key/entanglement rate");
  bound->require_subcommand(1);

  BoundChainOpts chain_opts;
  auto* bound_chain = bound->add_subcommand("chain", "repeater chain bound");
  add_chain_shape_options(bound_chain, chain_opts.length_km, chain_opts.nodes_n,
                          chain_opts.spacings, chain_opts.nodes_opt,
                          chain_opts.spacings_opt);
  add_attenuation_options(bound_chain, chain_opts.att);
  bound_chain->add_option("--epsilon", chain_opts.epsilon, "accuracy parameter");
  chain_opts.uses_opt = bound_chain->add_option("--uses-total", chain_opts.uses_total,
                                                "total channel uses for the total bound");

  BoundNetworkOpts network_opts;
  auto* bound_network = bound->add_subcommand("network", "min-cut bound from a JSON file");
  bound_network->add_option("--network", network_opts.path, "network JSON file")->required();
  bound_network->add_option("--epsilon", network_opts.epsilon, "accuracy parameter");

  SimulateOpts sim_opts;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo repeater protocol");
  add_chain_shape_options(simulate_cmd, sim_opts.length_km, sim_opts.nodes_n,
                          sim_opts.spacings, sim_opts.nodes_opt,
                          sim_opts.spacings_opt);
  add_attenuation_options(simulate_cmd, sim_opts.att);
  simulate_cmd->add_option("--trials", sim_opts.trials, "number of protocol trials")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim_opts.seed, "RNG seed");

  SweepOpts sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate bounds vs achievable rates");
  sweep_cmd->add_option("--l-min-km", sweep_opts.spec.l_min_km, "first length")->required();
  sweep_cmd->add_option("--l-max-km", sweep_opts.spec.l_max_km, "last length")->required();
  sweep_cmd->add_option("--step-km", sweep_opts.spec.step_km, "length step")->required();
  sweep_cmd->add_option("--n-values", sweep_opts.spec.n_values,
                        "comma-separated repeater counts")
      ->required()
      ->delimiter(',');
  add_attenuation_options(sweep_cmd, sweep_opts.att);
  sweep_cmd->add_option("--epsilon", sweep_opts.spec.epsilon, "accuracy parameter");
  sweep_opts.clock_opt = sweep_cmd->add_option("--clock-hz", sweep_opts.clock_hz,
                                               "channel clock for time summaries");
  sweep_opts.trials_opt = sweep_cmd->add_option("--trials", sweep_opts.trials,
                                                "Monte-Carlo trials per row")
                              ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_opts.spec.seed, "RNG seed");
  sweep_cmd->add_option("--out", sweep_opts.out_path, "output CSV path")->required();

  RouteOpts route_opts;
  auto* route_cmd = app.add_subcommand("route", "best single path through a network");
  route_cmd->add_option("--network", route_opts.path, "network JSON file")->required();

  ConvertOpts convert_opts;
  auto* convert_cmd = app.add_subcommand("convert", "attenuation unit conversion");
  auto* convert_group = convert_cmd->add_option_group("units", "direction (exactly one)");
  convert_opts.loss_opt = convert_group->add_option(
      "--loss-db-per-km", convert_opts.loss_db_per_km, "fiber loss in dB/km");
  convert_group->add_option("--att-length-km", convert_opts.attenuation_length_km,
                            "attenuation length in km");
  convert_group->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (bound_chain->parsed()) {
      return run_bound_chain(chain_opts);
    }
    if (bound_network->parsed()) {
      return run_bound_network(network_opts);
    }
    if (simulate_cmd->parsed()) {
      return run_simulate(sim_opts);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_opts);
    }
    if (route_cmd->parsed()) {
      return run_route(route_opts);
    }
    if (convert_cmd->parsed()) {
      return run_convert(convert_opts);
    }
  } catch (const qnetbound::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qnetbound::DisconnectedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qnetbound::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand selected\n";
  return 2;
}
