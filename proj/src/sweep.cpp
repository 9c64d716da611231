#include "qnetbound/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "parallel.hpp"
#include "qnetbound/bounds.hpp"
#include "qnetbound/errors.hpp"
#include "qnetbound/repeater.hpp"

namespace qnetbound {

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.l_min_km) || spec.l_min_km <= 0.0) {
    throw SpecError("sweep: l_min_km must be finite and positive");
  }
  if (!std::isfinite(spec.l_max_km) || spec.l_max_km < spec.l_min_km) {
    throw SpecError("sweep: l_max_km must be finite and at least l_min_km");
  }
  if (!std::isfinite(spec.step_km) || spec.step_km <= 0.0) {
    throw SpecError("sweep: step_km must be finite and positive");
  }
  if (spec.n_values.empty()) {
    throw SpecError("sweep: n_values must not be empty");
  }
  for (int n : spec.n_values) {
    if (n < 0) {
      throw SpecError("sweep: repeater counts must be nonnegative");
    }
  }
  if (!std::isfinite(spec.attenuation_length_km) || spec.attenuation_length_km <= 0.0) {
    throw SpecError("sweep: attenuation_length_km must be finite and positive");
  }
  validate(EpsilonParams{spec.epsilon});
  if (spec.trials && *spec.trials < 1) {
    throw SpecError("sweep: trials must be at least 1");
  }
}

std::vector<SweepRow> sweep_rows(const SweepSpec& spec) {
  validate(spec);

  const std::set<int> n_sorted(spec.n_values.begin(), spec.n_values.end());
  std::vector<double> lengths;
  // Half-step slack keeps l_max itself inside the grid despite accumulation
  // rounding in l_min + i*step.
  for (std::int64_t i = 0;; ++i) {
    const double length = spec.l_min_km + static_cast<double>(i) * spec.step_km;
    if (length > spec.l_max_km + 0.5 * spec.step_km) {
      break;
    }
    lengths.push_back(std::min(length, spec.l_max_km));
  }

  const EpsilonParams eps{spec.epsilon};
  const double prefactor = epsilon_prefactor(eps);

  std::vector<SweepRow> rows;
  rows.reserve(n_sorted.size() * lengths.size());
  for (int n : n_sorted) {
    for (double length : lengths) {
      ChainSpec chain;
      chain.total_length_km = length;
      chain.num_intermediate = n;
      chain.attenuation_length_km = spec.attenuation_length_km;
      SweepRow row;
      row.length_km = length;
      row.num_intermediate = n;
      row.eta_segment = segment_transmittance(chain, 0);
      row.bound_per_use = chain_bound_per_use(chain) * prefactor;
      row.achievable_per_use = analytic_repeater_rate(chain);
      // The asymptote column tracks the bound column's epsilon convention so
      // the two stay comparable at any epsilon.
      row.approx_per_use = small_eta_chain_approx(chain) * prefactor;
      rows.push_back(row);
    }
  }

  if (spec.trials) {
    // Rows are independent simulations with their own seeded substreams, so
    // parallel filling stays deterministic.
    internal::run_chunks(static_cast<std::int64_t>(rows.size()), [&](std::int64_t i) {
      SweepRow& row = rows[static_cast<std::size_t>(i)];
      SimConfig config;
      config.chain.total_length_km = row.length_km;
      config.chain.num_intermediate = row.num_intermediate;
      config.chain.attenuation_length_km = spec.attenuation_length_km;
      config.trials = *spec.trials;
      config.seed = spec.seed;
      const SimResult sim = simulate(config);
      row.mc_rate = sim.rate_per_use;
      row.mc_stderr = sim.stderr_rate;
    });
  }
  return rows;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string sweep_csv_text(const std::vector<SweepRow>& rows, bool with_mc) {
  std::string csv = "L_km,n,eta_segment,bound_per_use,achievable_per_use,approx_per_use";
  if (with_mc) {
    csv += ",mc_rate,mc_stderr";
  }
  csv += '\n';
  for (const SweepRow& row : rows) {
    csv += format_number(row.length_km);
    csv += ',';
    csv += std::to_string(row.num_intermediate);
    csv += ',';
    csv += format_number(row.eta_segment);
    csv += ',';
    csv += format_number(row.bound_per_use);
    csv += ',';
    csv += format_number(row.achievable_per_use);
    csv += ',';
    csv += format_number(row.approx_per_use);
    if (with_mc) {
      csv += ',';
      csv += format_number(row.mc_rate);
      csv += ',';
      csv += format_number(row.mc_stderr);
    }
    csv += '\n';
  }
  return csv;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw SpecError("cannot write to '" + tmp + "'");
    }
    out << text;
    out.flush();
    if (!out) {
      throw SpecError("failed writing '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw SpecError("cannot move temporary output into place at '" + path + "'");
  }
}

}  // namespace qnetbound
