#include "chancomp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "chancomp/channel.hpp"
#include "chancomp/compressor.hpp"
#include "chancomp/correlations.hpp"
#include "chancomp/csv.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/map_kernel.hpp"
#include "chancomp/metrics.hpp"
#include "chancomp/svg.hpp"
#include "chancomp/sweep.hpp"
#include "chancomp/zoo.hpp"

namespace chancomp {

namespace {

struct Ctx {
  const VerifyOptions& opt;
  bool full() const { return opt.level == VerifyLevel::kFull; }
  std::uint64_t seed(std::uint64_t k) const { return opt.seed + k; }
  OptBudget budget(std::uint64_t k) const {
    OptBudget b = full() ? OptBudget{} : OptBudget::quick();
    b.seed = seed(k);
    return b;
  }
};

CMatrix identity(std::size_t d) {
  return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

CheckResult make(int id, std::string name, double value, double bound, bool passed, nlohmann::json detail) {
  CheckResult c;
  c.criterion = id;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.passed = passed;
  c.detail = std::move(detail);
  return c;
}

// 1. Kraus -> Choi -> Kraus and Stinespring agree with the Kraus sum.
CheckResult round_trips(const Ctx& ctx) {
  double worst_choi = 0.0, worst_stine = 0.0;
  for (std::size_t s = 0; s < 100; ++s) {
    const std::size_t din = 1 + s % 8, dout = 1 + (s / 8) % 8;
    std::size_t env = 1 + (s * 5) % 8;
    if (dout * env < din) env = (din + dout - 1) / dout;
    const auto ch = random_channel(din, dout, env, ctx.seed(s));
    CounterRng rng(ctx.seed(s), 0x5717E);
    const CMatrix rho = random_density(rng, din, 1 + s % din);
    CMatrix direct = CMatrix::Zero(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(dout));
    for (const auto& k : ch.kraus()) direct += k * rho * k.adjoint();
    const auto back = kraus_from_choi(to_choi(ch));
    worst_choi = std::max(worst_choi, max_abs(chancomp::apply(back, rho) - direct));
    const auto v = stinespring(ch);
    const CMatrix big = v.matrix * rho * v.matrix.adjoint();
    worst_stine = std::max(worst_stine, max_abs(partial_trace(big, TensorIndex{dout, v.dim_env}, Keep::kLeft) - direct));
  }
  const double worst = std::max(worst_choi, worst_stine);
  return make(1, "representation_round_trips", worst, 1e-9, worst <= 1e-9,
              {{"states", 100}, {"max_err_choi", worst_choi}, {"max_err_stinespring", worst_stine}});
}

// 2. Exact identities.
CheckResult exact_identities(const Ctx&) {
  nlohmann::json detail;
  double worst = 0.0;
  bool ranks_ok = true;
  for (std::size_t d : {2, 3, 4}) {
    const double dd = static_cast<double>(d * d);
    const double err = max_abs(to_choi(randomizing_channel(d)).matrix - identity(d * d) / dd);
    detail["randomizing_choi_err_d" + std::to_string(d)] = err;
    worst = std::max(worst, err);
  }
  for (std::size_t d : {3, 4}) {
    const std::pair<double, std::size_t> cases[] = {{0.5, d * d}, {1.0, d * (d + 1) / 2}, {0.0, d * (d - 1) / 2}};
    for (auto [lambda, expect] : cases) {
      const auto w = werner_channel(d, lambda);
      const std::size_t rank = numerical_rank(to_choi(w).matrix);
      const std::string key = "werner_rank_d" + std::to_string(d) + "_lambda" + format_double(lambda);
      detail[key] = {{"kraus_count", w.kraus_count()}, {"choi_rank", rank}, {"expected", expect}};
      ranks_ok = ranks_ok && rank == expect && w.kraus_count() == expect;
    }
  }
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{4, 4}, {16, 4}, {37, 5}}) {
    const auto f = tight_frame(n, d);
    double err = max_abs(f.frame_operator() - identity(d) / static_cast<double>(d));
    for (const auto& psi : f.vectors)
      for (Eigen::Index j = 0; j < psi.size(); ++j) err = std::max(err, std::abs(std::norm(psi[j]) - 1.0 / d));
    detail["frame_err_" + std::to_string(n) + "_" + std::to_string(d)] = err;
    worst = std::max(worst, err);
  }
  const CVector one = CVector::Unit(16, 0);
  const double qc_err = max_abs(chancomp::apply(qc_channel(16, 16), one * one.adjoint()) - identity(16) / 16.0);
  detail["qc_maximally_mixed_err"] = qc_err;
  worst = std::max(worst, qc_err);
  detail["werner_ranks_ok"] = ranks_ok;
  return make(2, "exact_identities", worst, 1e-12, worst <= 1e-12 && ranks_ok, detail);
}

// 3. Slice maps are unbiased.
CheckResult unbiasedness(const Ctx& ctx) {
  const std::size_t samples = ctx.full() ? 10000 : 4000;
  const std::pair<const char*, Channel> channels[] = {
      {"randomizing:d=8", randomizing_channel(8)},
      {"werner:d=4,lambda=0.75", werner_channel(4, 0.75)},
      {"random:a=8,b=8,e=64", random_channel(8, 8, 64, ctx.seed(3))},
  };
  nlohmann::json detail = {{"samples", samples}};
  double worst = 0.0;
  std::uint64_t k = 0;
  for (const auto& [name, ch] : channels) {
    CounterRng rng(ctx.seed(k), 0x4B0);
    const CMatrix rho = random_density(rng, ch.dim_in(), ch.dim_in());
    const auto est = estimate_slice_mean(ch, rho, samples, ctx.seed(100 + k));
    const double z = est.max_z_score();
    detail[name] = z;
    worst = std::max(worst, z);
    ++k;
  }
  return make(3, "slice_unbiasedness_max_z", worst, 4.0, worst <= 4.0, detail);
}

// 4. psi_1 moment bound.
CheckResult psi1_moments(const Ctx& ctx) {
  const std::size_t m = ctx.full() ? 100000 : 20000;
  const std::size_t d = 4, s = 8;
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t k = 0; k < 5; ++k) {
    CounterRng rng(ctx.seed(k), 0x951);
    const CMatrix sigma = random_density(rng, d * s, 1 + rng.below(d * s));
    const CVector y = haar_vector(rng, d);
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
      const auto est = psi1_moment_oracle(sigma, y, p, m, ctx.seed(200 + k));
      const double ratio = est.normalized_moment / est.bound;
      worst = std::max(worst, ratio);
      rows.push_back({{"case", k}, {"p", p}, {"moment", est.normalized_moment}, {"bound", est.bound}, {"ratio", ratio}});
    }
  }
  return make(4, "psi1_moment_ratio", worst, 1.05, worst <= 1.05, {{"samples", m}, {"s", s}, {"cases", rows}});
}

// 5. Error decays like n^{-1/2}.
CheckResult scaling_law(const Ctx& ctx) {
  const Channel ref = randomizing_channel(8);
  const MapKernel kr(ref);
  const std::vector<std::size_t> ns = {256, 1024, 4096};
  const std::size_t seeds = 5;
  std::vector<double> mean(ns.size(), 0.0);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const auto res = compress(ref, {ns[i], Sampler::kHaar, ctx.seed(s), std::nullopt});
      mean[i] += one_to_p_distance(MapKernel(res.sliced), kr, 1.0, ctx.budget(s)).value / seeds;
    }
  }
  const double r1 = mean[1] / mean[0], r2 = mean[2] / mean[1];
  auto in = [](double r) { return r >= 0.4 && r <= 0.65; };
  const double worst = std::max(std::abs(r1 - 0.525), std::abs(r2 - 0.525)) + 0.525;
  return make(5, "scaling_ratio", in(r1) && in(r2) ? std::max(r1, r2) : worst, 0.65, in(r1) && in(r2),
              {{"n", ns}, {"mean_error", mean}, {"ratio_1024_256", r1}, {"ratio_4096_1024", r2}, {"seeds", seeds},
               {"accepted_range", {0.4, 0.65}}});
}

// 6. TP correction is exact and moves the map by about the defect.
CheckResult tp_correction(const Ctx& ctx) {
  const Channel ref = randomizing_channel(8);
  const std::size_t n = 512;
  nlohmann::json rows = nlohmann::json::array();
  double worst_ratio = 0.0, worst_defect = 0.0;
  std::size_t used = 0;
  for (std::uint64_t s = 0; used < 10 && s < 100; ++s) {
    const auto res = compress(ref, {n, Sampler::kHaar, ctx.seed(s), std::nullopt});
    if (res.tp_defect >= 0.5) continue;
    ++used;
    Channel fixed = tp_correct(res);
    if (ctx.opt.inject_fault) fixed = scaled(fixed, 1.01);
    const double defect = fixed.tp().defect;
    const double shift =
        one_to_p_distance(MapKernel(fixed), MapKernel(res.sliced), 1.0, ctx.budget(s)).value;
    const double allowed = 1.5 * res.tp_defect + 1e-6;
    worst_ratio = std::max(worst_ratio, shift / allowed);
    worst_defect = std::max(worst_defect, defect);
    rows.push_back({{"seed", ctx.seed(s)}, {"tp_defect", res.tp_defect}, {"corrected_defect", defect},
                    {"shift", shift}, {"allowed", allowed}});
  }
  const bool ok = used == 10 && worst_defect <= 1e-10 && worst_ratio <= 1.0;
  return make(6, "tp_correction_shift_ratio", worst_ratio, 1.0, ok,
              {{"n", n}, {"compressions", used}, {"corrected_defect_max", worst_defect},
               {"corrected_defect_ok", worst_defect <= 1e-10}, {"fault_injected", ctx.opt.inject_fault}, {"runs", rows}});
}

// 7. Too few slices violate the ordering for the q-c channel; exhaustive slicing does not.
CheckResult lower_bound(const Ctx& ctx) {
  const Channel ref = qc_channel(16, 16);
  const double eps = 0.3;
  const CVector x = CVector::Unit(16, 0);
  const auto res = compress(ref, {8, Sampler::kHaar, ctx.seed(0), std::nullopt});
  const MapKernel kr(ref), ka(res.sliced);

  // y: eigenvector of the smallest eigenvalue of the (rank <= 8) output.
  const CMatrix out = ka.apply_pure(x);
  const auto eig = hermitian_eig((out + out.adjoint()) / 2.0);
  const CVector y = eig.eigenvectors.col(0);
  const double null_residual = (out * y).norm();
  const CMatrix t = kr.apply_pure(x);
  const Complex ny = y.dot(t * y), dy = y.dot((out - t) * y);
  const double slack_y = eps * ny.real() + eps / 16.0 - std::abs(dy.real());
  const double threshold = -(1.0 - 2.0 * eps) / 16.0 + 1e-9;
  const auto at_x = ordering_slack_at(ref, res.sliced, eps, x);
  const auto margin = ordering_margin(ref, res.sliced, eps, ctx.budget(0), {x});

  const auto exact = compress(ref, {16, Sampler::kBasisExhaustive, ctx.seed(0), std::nullopt});
  double exhaustive_min = kInfinity;
  for (double e : {1e-3, 0.3}) exhaustive_min = std::min(exhaustive_min, ordering_margin(ref, exact.sliced, e, ctx.budget(1)).value);

  const bool ok = slack_y < threshold && at_x.value < threshold && null_residual <= 1e-9 && margin.value < 0.0 &&
                  exhaustive_min >= 0.0;
  return make(7, "ordering_violation_slack", slack_y, threshold, ok,
              {{"eps", eps}, {"null_residual", null_residual}, {"slack_at_null_y", slack_y}, {"slack_at_x", at_x.value},
               {"margin", margin.value}, {"exhaustive_margin_min", exhaustive_min}});
}

// 8. Entropy and fidelity deviations against the measured ordering parameter.
CheckResult entropy_fidelity(const Ctx& ctx) {
  const Channel ref = randomizing_channel(8);
  const auto res = compress(ref, {4096, Sampler::kHaar, ctx.seed(0), std::nullopt});
  const Channel approx = tp_correct(res);
  const double eps = measured_ordering_parameter(ref, approx, ctx.budget(0)).value;
  const std::size_t pool = ctx.full() ? 500 : 200;
  const auto rep = approximation_report(ref, approx, OptBudget::pool_only(pool, ctx.seed(1)), 32);
  const double b2 = 8.0 * eps + 0.01, binf = 4.0 * eps + 0.01, bf = 3.0 / std::sqrt(2.0) * std::sqrt(eps) + 0.02;
  const double ratio = std::max({rep.max_renyi2_deviation / b2, rep.max_renyi_inf_deviation / binf,
                                 rep.max_fidelity_deviation / bf});
  const bool ok = eps < 0.5 && ratio <= 1.0;
  return make(8, "entropy_fidelity_ratio", ratio, 1.0, ok,
              {{"eps_hat", eps}, {"report", to_json(rep)}, {"bound_renyi2", b2}, {"bound_renyi_inf", binf},
               {"bound_fidelity", bf}, {"tp_defect", res.tp_defect}});
}

// 9. Werner compression in the (1 -> inf) norm.
CheckResult werner_compression(const Ctx& ctx) {
  const std::size_t d = 16;
  const Channel w = werner_channel(d, 0.75);
  const auto res = compress(w, {64 * d, Sampler::kHaar, ctx.seed(0), std::nullopt});
  const std::size_t pool = ctx.full() ? 1000 : 300;
  const double dev =
      one_to_p_distance(MapKernel(res.sliced), MapKernel(w), kInfinity, OptBudget::pool_only(pool, ctx.seed(1))).value;
  const double top = max_output_infnorm(w, ctx.budget(2)).value;
  const double bound = 0.5 * top;
  return make(9, "werner_one_to_inf", dev, bound, dev <= bound,
              {{"n", 64 * d}, {"pool", pool}, {"max_output_infnorm", top}, {"tp_defect", res.tp_defect}});
}

// 10. Compressed forgetful channel still destroys correlations.
CheckResult correlations(const Ctx& ctx) {
  CorrelationsConfig c;
  c.dim_a = 8;
  c.dim_c = 4;
  c.sigma_spec = "maxmixed:d=8";
  c.n = 2048;
  c.seed = ctx.seed(0);
  c.mixture_terms = 20;
  c.dual_checks = 20;
  c.budget = ctx.budget(0);
  const auto rep = correlations_demo(c);
  CorrelationsConfig ex = c;
  ex.n = 64;
  ex.sampler = Sampler::kBasisExhaustive;
  ex.dual_checks = 0;
  const auto exact = correlations_demo(ex);
  const bool ok = rep.bound_holds && rep.dual_holds && exact.left_side <= 1e-10;
  return make(10, "correlation_left_side", rep.left_side, rep.per_term_bound + 1e-10, ok,
              {{"report", to_json(rep)}, {"exhaustive_left_side", exact.left_side}});
}

// 11. Same seeds, same bytes.
CheckResult determinism(const Ctx& ctx) {
  ScenarioConfig c;
  c.channel = "randomizing:d=4";
  c.ns = {16, 64, 256};
  c.samplers = {Sampler::kHaar, Sampler::kBasis};
  c.seeds = {ctx.seed(0), ctx.seed(1)};
  c.metrics = {"one_to_p:p=1", "tp_defect"};
  c.budget = OptBudget::quick();
  c.record_time = false;
  c.threads = 2;
  const std::string a = sweep_csv(run_sweep(c));
  c.threads = 1;
  const std::string b = sweep_csv(run_sweep(c));
  const auto table = parse_csv(a);
  const std::string svg_a = render_svg(table, "n", "value", {"sampler", "metric"});
  const std::string svg_b = render_svg(parse_csv(b), "n", "value", {"sampler", "metric"});
  const bool ok = a == b && svg_a == svg_b;
  return make(11, "byte_identical_outputs", ok ? 0.0 : 1.0, 0.0, ok,
              {{"csv_bytes", a.size()}, {"svg_bytes", svg_a.size()}, {"csv_equal", a == b}, {"svg_equal", svg_a == svg_b}});
}

}  // namespace

std::string to_string(VerifyLevel level) { return level == VerifyLevel::kFull ? "full" : "quick"; }

VerifyLevel verify_level_from_string(const std::string& name) {
  if (name == "quick") return VerifyLevel::kQuick;
  if (name == "full") return VerifyLevel::kFull;
  throw ParseError("unknown budget '" + name + "' (expected quick or full)");
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult run_check(int criterion, const VerifyOptions& options) {
  static const std::function<CheckResult(const Ctx&)> checks[] = {
      round_trips,  exact_identities, unbiasedness,       psi1_moments,  scaling_law, tp_correction,
      lower_bound,  entropy_fidelity, werner_compression, correlations,  determinism};
  if (criterion < 1 || criterion > kCriterionCount) {
    throw ConfigError("unknown criterion " + std::to_string(criterion));
  }
  const Ctx ctx{options};
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = checks[criterion - 1](ctx);
  } catch (const std::exception& e) {
    r = make(criterion, "error", kInfinity, 0.0, false, {{"error", e.what()}});
  }
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

VerifyReport verify_suite(const VerifyOptions& options) {
  VerifyReport rep;
  rep.options = options;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    rep.checks.push_back(run_check(id, options));
  }
  return rep;
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"criterion", c.criterion}, {"name", c.name},   {"value", c.value},       {"bound", c.bound},
          {"passed", c.passed},       {"detail", c.detail}, {"wall_time_ms", c.wall_time_ms}};
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"level", to_string(r.options.level)},
          {"seed", r.options.seed},
          {"fault_injected", r.options.inject_fault},
          {"passed", r.passed()},
          {"checks", checks}};
}

std::string verify_csv(const VerifyReport& r) {
  std::string out = "criterion,name,value,bound,pass\n";
  for (const auto& c : r.checks) {
    out += csv_line({std::to_string(c.criterion), c.name, format_double(c.value), format_double(c.bound),
                     c.passed ? "true" : "false"});
  }
  return out;
}

}  // namespace chancomp
