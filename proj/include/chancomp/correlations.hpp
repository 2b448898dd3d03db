#pragma once

// A completely forgetful channel X -> (tr X) sigma destroys every correlation
// between A and a reference system C. This checks how well a compressed copy
// N' keeps that property on a seeded separable state
//
//   rho_AC = sum_x p_x rho_A^(x) (x) rho_C^(x),
//
// comparing || (N' (x) Id)(rho_AC) - sigma (x) rho_C ||_1 with the per-term
// bound max_x || N'(rho_A^(x)) - sigma ||_1, and spot-checks the dual maps on
// seeded effects 0 <= M <= 1.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chancomp/compressor.hpp"
#include "chancomp/metrics.hpp"

namespace chancomp {

struct CorrelationsConfig {
  std::size_t dim_a = 8;
  std::size_t dim_c = 4;
  std::string sigma_spec = "maxmixed:d=8";
  std::size_t n = 2048;
  Sampler sampler = Sampler::kHaar;
  std::uint64_t seed = 0;
  std::size_t mixture_terms = 20;
  std::size_t dual_checks = 20;
  OptBudget budget;

  void validate() const;
};

nlohmann::json to_json(const CorrelationsConfig& c);

struct CorrelationsReport {
  CorrelationsConfig config;
  std::size_t env_dim = 0;
  double tp_defect = 0.0;
  double left_side = 0.0;
  double per_term_bound = 0.0;
  std::vector<double> term_distances;
  bool bound_holds = false;  // left_side <= per_term_bound + 1e-10
  /// |B| * sup_x ||(N' - N)(x)||_inf, estimated from the optimizer and the dual-check witnesses.
  double eps_hat = 0.0;
  double eps_hat_optimizer = 0.0;
  /// max over effects M of ||(N'* - N*)(M)||_inf / (eps_hat tr M / |B|).
  double dual_worst_ratio = 0.0;
  bool dual_holds = false;
};

nlohmann::json to_json(const CorrelationsReport& r);

CorrelationsReport correlations_demo(const CorrelationsConfig& config);

}  // namespace chancomp
