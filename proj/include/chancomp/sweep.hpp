#pragma once

// Grid sweeps over (n, sampler, seed) for one channel, one CSV row per grid
// point and metric. Rows are emitted in grid order (n, then sampler, then
// seed, then metric) whatever order the worker threads finish in.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chancomp/compressor.hpp"
#include "chancomp/metrics.hpp"

namespace chancomp {

struct ScenarioConfig {
  std::string channel;  // channel spec, e.g. "randomizing:d=8"
  std::vector<std::size_t> ns;
  std::vector<Sampler> samplers{Sampler::kHaar};
  std::vector<std::uint64_t> seeds{0};
  /// Metric specs: "one_to_p:p=1" (p = 1, 2 or inf), "tp_defect", "kraus_count",
  /// "max_output_infnorm" (of the reference channel), "ordering_margin:eps=0.3",
  /// "measured_epsilon". Add "map=corrected" to compare the TP-corrected map.
  std::vector<std::string> metrics{"one_to_p:p=1"};
  OptBudget budget;
  std::string out_dir;  // empty: no files written
  std::string csv_name = "sweep.csv";
  bool record_time = true;  // false writes ms = 0 so the CSV is byte-reproducible
  std::size_t threads = 0;  // 0: one per hardware thread

  /// Throws ConfigError on empty grids and ParseError on malformed specs.
  void validate() const;
};

nlohmann::json to_json(const ScenarioConfig& c);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

struct SweepRow {
  std::string channel;
  std::size_t n = 0;
  Sampler sampler = Sampler::kHaar;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  double wall_time_ms = 0.0;
};

extern const char* const kSweepHeader;

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Runs the grid; writes <out_dir>/<csv_name> and <out_dir>/sweep_config.json when out_dir is set.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config);

}  // namespace chancomp
