#include "chancomp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <thread>

#include "chancomp/channel_spec.hpp"
#include "chancomp/csv.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/map_kernel.hpp"

namespace chancomp {

const char* const kSweepHeader = "channel,n,sampler,seed,metric,value,ms";

namespace {

struct MetricSpec {
  std::string kind;
  double p = 1.0;
  double eps = 0.3;
  bool corrected = false;
};

double parse_number(const ChannelSpec& spec, const std::string& key) {
  const std::string& v = spec.params.at(key);
  if (v == "inf" || v == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::logic_error&) {
  }
  throw ParseError("parameter '" + key + "=" + v + "' in metric '" + spec.to_string() + "' is not a number");
}

MetricSpec parse_metric(const std::string& text) {
  const ChannelSpec spec = parse_spec(text);
  MetricSpec m;
  m.kind = spec.name;
  static const std::vector<std::string> kinds = {"one_to_p",        "tp_defect",  "kraus_count",
                                                 "max_output_infnorm", "ordering_margin", "measured_epsilon"};
  if (std::find(kinds.begin(), kinds.end(), m.kind) == kinds.end()) {
    throw ConfigError("unknown metric '" + m.kind + "' in '" + text + "'");
  }
  for (const auto& [k, v] : spec.params) {
    if (k == "p" && m.kind == "one_to_p") {
      m.p = parse_number(spec, k);
      if (!(m.p >= 1.0)) throw ConfigError("metric '" + text + "' needs p >= 1");
    } else if (k == "eps" && m.kind == "ordering_margin") {
      m.eps = parse_number(spec, k);
    } else if (k == "map" && (v == "sliced" || v == "corrected")) {
      m.corrected = v == "corrected";
    } else {
      throw ParseError("unexpected token '" + k + "=" + v + "' in metric '" + text + "'");
    }
  }
  return m;
}

double evaluate(const MetricSpec& m, const Channel& ref, const MapKernel& ref_kernel, const CompressionResult& res,
                const OptBudget& budget) {
  if (m.kind == "tp_defect") return res.tp_defect;
  if (m.kind == "kraus_count") return static_cast<double>(res.sliced.kraus_count());
  if (m.kind == "max_output_infnorm") return max_output_infnorm(ref, budget).value;
  if (m.corrected && !res.corrected) tp_correct(res);  // throws SingularityError with the defect
  const Channel& approx = m.corrected ? *res.corrected : res.sliced;
  if (m.kind == "one_to_p") return one_to_p_distance(MapKernel(approx), ref_kernel, m.p, budget).value;
  if (m.kind == "ordering_margin") return ordering_margin(ref, approx, m.eps, budget).value;
  return measured_ordering_parameter(ref, approx, budget).value;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (channel.empty()) throw ConfigError("sweep config: channel spec is empty");
  if (ns.empty()) throw ConfigError("sweep config: n grid is empty");
  if (samplers.empty()) throw ConfigError("sweep config: sampler grid is empty");
  if (seeds.empty()) throw ConfigError("sweep config: seed grid is empty");
  if (metrics.empty()) throw ConfigError("sweep config: metric list is empty");
  for (auto n : ns)
    if (n == 0) throw ConfigError("sweep config: n must be >= 1");
  parse_spec(channel);
  for (const auto& m : metrics) parse_metric(m);
  budget.validate();
}

nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json samplers = nlohmann::json::array();
  for (auto s : c.samplers) samplers.push_back(to_string(s));
  return {{"channel", c.channel}, {"n", c.ns},           {"samplers", samplers},
          {"seeds", c.seeds},     {"metrics", c.metrics}, {"budget", to_json(c.budget)},
          {"out_dir", c.out_dir}, {"csv_name", c.csv_name}, {"record_time", c.record_time},
          {"threads", c.threads}};
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  try {
    c.channel = j.at("channel").get<std::string>();
    c.ns = j.at("n").get<std::vector<std::size_t>>();
    if (j.contains("samplers")) {
      c.samplers.clear();
      for (const auto& s : j.at("samplers")) c.samplers.push_back(sampler_from_string(s.get<std::string>()));
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("metrics")) c.metrics = j.at("metrics").get<std::vector<std::string>>();
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      c.budget.restarts = b.value("restarts", c.budget.restarts);
      c.budget.iterations = b.value("iterations", c.budget.iterations);
      c.budget.initial_step = b.value("initial_step", c.budget.initial_step);
      c.budget.min_step = b.value("min_step", c.budget.min_step);
      c.budget.sample_pool = b.value("sample_pool", c.budget.sample_pool);
      c.budget.seed = b.value("seed", c.budget.seed);
    }
    c.out_dir = j.value("out_dir", c.out_dir);
    c.csv_name = j.value("csv_name", c.csv_name);
    c.record_time = j.value("record_time", c.record_time);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  return c;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_line({r.channel, std::to_string(r.n), to_string(r.sampler), std::to_string(r.seed), r.metric,
                     format_double(r.value), format_double(r.wall_time_ms)});
  }
  return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config) {
  config.validate();
  if (!config.out_dir.empty()) ensure_output_dir(config.out_dir);
  const Channel ref = build_channel(config.channel);
  const MapKernel ref_kernel(ref);
  std::vector<MetricSpec> metrics;
  for (const auto& m : config.metrics) metrics.push_back(parse_metric(m));

  struct Point {
    std::size_t n;
    Sampler sampler;
    std::uint64_t seed;
  };
  std::vector<Point> grid;
  for (auto n : config.ns)
    for (auto s : config.samplers)
      for (auto seed : config.seeds) grid.push_back({n, s, seed});

  std::vector<SweepRow> rows(grid.size() * metrics.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g; (g = next++) < grid.size();) {
      try {
        const Point& pt = grid[g];
        const auto res = compress(ref, {pt.n, pt.sampler, pt.seed, std::nullopt});
        OptBudget budget = config.budget;
        budget.seed = pt.seed;
        for (std::size_t m = 0; m < metrics.size(); ++m) {
          const auto t0 = std::chrono::steady_clock::now();
          const double value = evaluate(metrics[m], ref, ref_kernel, res, budget);
          const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
          rows[g * metrics.size() + m] = {config.channel, pt.n,  pt.sampler, pt.seed, config.metrics[m],
                                          value,          config.record_time ? dt.count() : 0.0};
        }
      } catch (...) {
        errors[g] = std::current_exception();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, grid.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    write_text_file((fs::path(config.out_dir) / config.csv_name).string(), sweep_csv(rows));
    write_text_file((fs::path(config.out_dir) / "sweep_config.json").string(), to_json(config).dump(2) + "\n");
  }
  return rows;
}

}  // namespace chancomp
