// Command-line driver: compress, sweep, verify, correlations, plot.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "chancomp/channel_spec.hpp"
#include "chancomp/compressor.hpp"
#include "chancomp/correlations.hpp"
#include "chancomp/csv.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/svg.hpp"
#include "chancomp/sweep.hpp"
#include "chancomp/verify.hpp"

namespace fs = std::filesystem;
using namespace chancomp;
using nlohmann::json;

namespace {

struct Shared {
  std::uint64_t seed = 0;
  std::string out = "chancomp_out";
  std::string budget = "quick";
  bool json = false;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--seed", s.seed, "Base seed")->capture_default_str();
  cmd->add_option("--out", s.out, "Output directory")->capture_default_str();
  cmd->add_option("--budget", s.budget, "Optimizer / check budget")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  cmd->add_flag("--json", s.json, "Machine-readable stdout");
}

OptBudget budget_for(const Shared& s) {
  OptBudget b = s.budget == "full" ? OptBudget{} : OptBudget::quick();
  b.seed = s.seed;
  return b;
}

std::string out_file(const Shared& s, const std::string& name) { return (fs::path(s.out) / name).string(); }

/// Writes <out>/<cmd>_config.json with everything the run resolved to.
void log_config(const Shared& s, const std::string& cmd, json config) {
  ensure_output_dir(s.out);
  config["command"] = cmd;
  config["seed"] = s.seed;
  config["budget_level"] = s.budget;
  config["out"] = s.out;
  write_text_file(out_file(s, cmd + "_config.json"), config.dump(2) + "\n");
  if (!s.json) std::cerr << "config: " << config.dump() << "\n";
}

int run_compress(const Shared& s, const std::string& channel, std::size_t n, const std::string& sampler) {
  const CompressionPlan plan{n, sampler_from_string(sampler), s.seed, std::nullopt};
  log_config(s, "compress", {{"channel", channel}, {"n", n}, {"sampler", sampler}});
  const auto res = compress(build_channel(channel), plan);
  const std::string path = out_file(s, "compress.json");
  write_text_file(path, to_json(res).dump() + "\n");
  const json summary = {{"channel", channel},
                        {"n", n},
                        {"sampler", sampler},
                        {"seed", s.seed},
                        {"env_dim", res.env_dim},
                        {"kraus_count", res.sliced.kraus_count()},
                        {"tp_defect", res.tp_defect},
                        {"large_defect_warning", res.large_defect_warning},
                        {"corrected", res.corrected.has_value()},
                        {"output", path}};
  if (s.json) {
    std::cout << summary.dump() << "\n";
  } else {
    std::cout << "compressed " << channel << " (|E|=" << res.env_dim << ") to " << res.sliced.kraus_count()
              << " Kraus operators, tp_defect=" << res.tp_defect << "\n";
    if (res.large_defect_warning) std::cout << "warning: tp_defect >= 0.5, increase n\n";
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int run_sweep_cmd(const Shared& s, ScenarioConfig c, bool plot) {
  c.budget = budget_for(s);
  c.out_dir = s.out;
  log_config(s, "sweep", to_json(c));
  const auto rows = run_sweep(c);
  const std::string csv = out_file(s, c.csv_name);
  std::string svg;
  if (plot) {
    svg = out_file(s, "sweep.svg");
    emit_svg(csv, "n", "value", {"sampler", "metric"}, svg);
  }
  if (s.json) {
    json out = {{"rows", rows.size()}, {"csv", csv}};
    if (plot) out["svg"] = svg;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "wrote " << rows.size() << " rows to " << csv << "\n";
    if (plot) std::cout << "wrote " << svg << "\n";
  }
  return 0;
}

int run_verify_cmd(const Shared& s, bool fault, const std::vector<int>& only) {
  VerifyOptions opt;
  opt.level = verify_level_from_string(s.budget);
  opt.seed = s.seed;
  opt.inject_fault = fault;
  opt.only = only;
  log_config(s, "verify", {{"level", s.budget}, {"inject_fault", fault}, {"criteria", only}});
  const auto rep = verify_suite(opt);
  write_text_file(out_file(s, "verify.json"), to_json(rep).dump(2) + "\n");
  write_text_file(out_file(s, "verify.csv"), verify_csv(rep));
  if (s.json) {
    std::cout << to_json(rep).dump() << "\n";
  } else {
    for (const auto& c : rep.checks) {
      std::printf("[%s] %2d %-28s value=%-12.6g bound=%-12.6g (%.0f ms)\n", c.passed ? "PASS" : "FAIL", c.criterion,
                  c.name.c_str(), c.value, c.bound, c.wall_time_ms);
    }
    std::printf("%s\n", rep.passed() ? "all checks passed" : "some checks FAILED");
  }
  return rep.passed() ? 0 : 1;
}

int run_correlations_cmd(const Shared& s, CorrelationsConfig c, const std::string& sampler) {
  c.seed = s.seed;
  c.budget = budget_for(s);
  c.sampler = sampler_from_string(sampler);
  log_config(s, "correlations", to_json(c));
  const auto rep = correlations_demo(c);
  write_text_file(out_file(s, "correlations.json"), to_json(rep).dump(2) + "\n");
  if (s.json) {
    std::cout << to_json(rep).dump() << "\n";
  } else {
    std::printf("left side      %.6g\nper-term bound %.6g (%s)\neps_hat        %.6g\ndual worst     %.6g (%s)\n",
                rep.left_side, rep.per_term_bound, rep.bound_holds ? "holds" : "VIOLATED", rep.eps_hat,
                rep.dual_worst_ratio, rep.dual_holds ? "holds" : "VIOLATED");
  }
  return rep.bound_holds && rep.dual_holds ? 0 : 1;
}

int run_plot_cmd(const Shared& s, const std::string& csv, const std::string& x, const std::string& y,
                 const std::vector<std::string>& groups, const std::string& name) {
  log_config(s, "plot", {{"csv", csv}, {"x", x}, {"y", y}, {"group", groups}, {"name", name}});
  const std::string path = out_file(s, name);
  emit_svg(csv, x, y, groups, path);
  if (s.json) {
    std::cout << json{{"svg", path}}.dump() << "\n";
  } else {
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random environment slicing of quantum channels"};
  app.require_subcommand(1);

  Shared s_compress, s_sweep, s_verify, s_corr, s_plot;

  auto* compress_cmd = app.add_subcommand("compress", "Compress one channel and write its Kraus set");
  add_shared(compress_cmd, s_compress);
  std::string c_channel, c_sampler = "haar";
  std::size_t c_n = 0;
  compress_cmd->add_option("--channel", c_channel, "Channel spec, e.g. randomizing:d=8")->required();
  compress_cmd->add_option("-n,--n", c_n, "Number of slices")->required()->check(CLI::PositiveNumber);
  compress_cmd->add_option("--sampler", c_sampler, "haar, basis or exhaustive")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over n, sampler and seed; writes CSV");
  add_shared(sweep_cmd, s_sweep);
  std::string sw_config, sw_channel;
  std::vector<std::size_t> sw_ns;
  std::vector<std::string> sw_samplers, sw_metrics;
  std::vector<std::uint64_t> sw_seeds;
  std::size_t sw_threads = 0;
  bool sw_no_timing = false, sw_plot = false;
  sweep_cmd->add_option("--config", sw_config, "Scenario JSON; flags below override its fields");
  sweep_cmd->add_option("--channel", sw_channel, "Channel spec");
  sweep_cmd->add_option("-n,--n", sw_ns, "Slice counts")->delimiter(',');
  sweep_cmd->add_option("--sampler", sw_samplers, "Samplers")->delimiter(',');
  sweep_cmd->add_option("--seeds", sw_seeds, "Seeds (default: --seed)")->delimiter(',');
  sweep_cmd->add_option("--metric", sw_metrics, "Metric specs, e.g. one_to_p:p=1 (repeatable)");
  sweep_cmd->add_option("--threads", sw_threads, "Worker threads (0: all cores)");
  sweep_cmd->add_flag("--no-timing", sw_no_timing, "Write ms=0 for byte-reproducible CSV");
  sweep_cmd->add_flag("--plot", sw_plot, "Also write sweep.svg");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks; nonzero exit on failure");
  add_shared(verify_cmd, s_verify);
  bool v_fault = false;
  std::vector<int> v_only;
  verify_cmd->add_flag("--inject-fault", v_fault, "Break Kraus normalization by 1% before the TP check");
  verify_cmd->add_option("--criteria", v_only, "Subset of criteria to run")->delimiter(',');

  auto* corr_cmd = app.add_subcommand("correlations", "Correlation destruction by a compressed forgetful channel");
  add_shared(corr_cmd, s_corr);
  CorrelationsConfig cc;
  std::string cc_sampler = "haar";
  corr_cmd->add_option("--dim-a", cc.dim_a)->capture_default_str();
  corr_cmd->add_option("--dim-c", cc.dim_c)->capture_default_str();
  corr_cmd->add_option("--sigma", cc.sigma_spec, "Output state spec")->capture_default_str();
  corr_cmd->add_option("-n,--n", cc.n)->capture_default_str();
  corr_cmd->add_option("--terms", cc.mixture_terms, "Separable mixture terms")->capture_default_str();
  corr_cmd->add_option("--dual-checks", cc.dual_checks)->capture_default_str();
  corr_cmd->add_option("--sampler", cc_sampler)->capture_default_str();

  auto* plot_cmd = app.add_subcommand("plot", "Log-log SVG line chart from a CSV");
  add_shared(plot_cmd, s_plot);
  std::string p_csv, p_x = "n", p_y = "value", p_name = "plot.svg";
  std::vector<std::string> p_groups;
  plot_cmd->add_option("--csv", p_csv, "Input CSV")->required();
  plot_cmd->add_option("--x", p_x)->capture_default_str();
  plot_cmd->add_option("--y", p_y)->capture_default_str();
  plot_cmd->add_option("--group", p_groups, "Grouping columns")->delimiter(',');
  plot_cmd->add_option("--name", p_name, "File name inside --out")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compress_cmd) return run_compress(s_compress, c_channel, c_n, c_sampler);
    if (*sweep_cmd) {
      ScenarioConfig c;
      if (!sw_config.empty()) c = scenario_from_json(json::parse(read_text_file(sw_config)));
      if (!sw_channel.empty()) c.channel = sw_channel;
      if (!sw_ns.empty()) c.ns = sw_ns;
      if (!sw_samplers.empty()) {
        c.samplers.clear();
        for (const auto& name : sw_samplers) c.samplers.push_back(sampler_from_string(name));
      }
      if (!sw_seeds.empty()) {
        c.seeds = sw_seeds;
      } else if (sw_config.empty()) {
        c.seeds = {s_sweep.seed};
      }
      if (!sw_metrics.empty()) c.metrics = sw_metrics;
      if (sw_threads) c.threads = sw_threads;
      if (sw_no_timing) c.record_time = false;
      return run_sweep_cmd(s_sweep, c, sw_plot);
    }
    if (*verify_cmd) return run_verify_cmd(s_verify, v_fault, v_only);
    if (*corr_cmd) return run_correlations_cmd(s_corr, cc, cc_sampler);
    if (*plot_cmd) return run_plot_cmd(s_plot, p_csv, p_x, p_y, p_groups, p_name);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
