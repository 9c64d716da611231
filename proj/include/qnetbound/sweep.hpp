#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnetbound/photonics.hpp"

namespace qnetbound {

// Grid of (total length, repeater count) points to tabulate. Lengths run
// l_min..l_max inclusive in steps of step_km; n_values are deduplicated and
// sorted. trials/seed switch the Monte-Carlo columns on.
struct SweepSpec {
  double l_min_km = 0.0;
  double l_max_km = 0.0;
  double step_km = 0.0;
  std::vector<int> n_values;
  double attenuation_length_km = 0.0;
  double epsilon = 0.0;
  std::optional<std::int64_t> trials;
  std::uint64_t seed = 0;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  double length_km = 0.0;
  int num_intermediate = 0;
  double eta_segment = 0.0;
  double bound_per_use = 0.0;       // cut bound, epsilon-amortized
  double achievable_per_use = 0.0;  // idealized repeater protocol
  double approx_per_use = 0.0;      // small-eta asymptote of the bound
  double mc_rate = 0.0;             // Monte-Carlo columns, when enabled
  double mc_stderr = 0.0;
};

// Rows in canonical order: num_intermediate major, length minor.
std::vector<SweepRow> sweep_rows(const SweepSpec& spec);

// %.9g rendering used for every numeric cell and CLI figure, so reruns are
// byte-identical.
std::string format_number(double value);

// CSV with a fixed header; the two mc_* columns appear only when with_mc.
std::string sweep_csv_text(const std::vector<SweepRow>& rows, bool with_mc);

// Write-then-rename so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace qnetbound
