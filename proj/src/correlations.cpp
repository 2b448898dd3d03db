#include "chancomp/correlations.hpp"

#include <algorithm>

#include "chancomp/channel_spec.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/map_kernel.hpp"
#include "chancomp/random.hpp"
#include "chancomp/zoo.hpp"

namespace chancomp {

namespace {

// Stream indices for the state and effect generators, away from slice indices.
constexpr std::uint64_t kMixtureStream = 0xC0AA'0000'0000ull;
constexpr std::uint64_t kEffectStream = 0xC0EF'0000'0000ull;

CMatrix random_effect(std::uint64_t seed, std::size_t index, std::size_t dim) {
  CounterRng rng(seed, kEffectStream + index);
  const CMatrix g = gaussian_matrix(rng, dim, dim);
  const CMatrix u = Eigen::HouseholderQR<CMatrix>(g).householderQ();
  RVector spec(static_cast<Eigen::Index>(dim));
  for (auto& l : spec) l = rng.uniform();
  return u * spec.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace

void CorrelationsConfig::validate() const {
  if (dim_a < 2 || dim_c < 2) throw ConfigError("correlations: dim_a and dim_c must be >= 2");
  if (mixture_terms < 1) throw ConfigError("correlations: mixture_terms must be >= 1");
  if (n < 1) throw ConfigError("correlations: n must be >= 1");
  budget.validate();
}

nlohmann::json to_json(const CorrelationsConfig& c) {
  return {{"dim_a", c.dim_a},
          {"dim_c", c.dim_c},
          {"sigma", c.sigma_spec},
          {"n", c.n},
          {"sampler", to_string(c.sampler)},
          {"seed", c.seed},
          {"mixture_terms", c.mixture_terms},
          {"dual_checks", c.dual_checks},
          {"budget", to_json(c.budget)}};
}

nlohmann::json to_json(const CorrelationsReport& r) {
  return {{"config", to_json(r.config)},
          {"env_dim", r.env_dim},
          {"tp_defect", r.tp_defect},
          {"left_side", r.left_side},
          {"per_term_bound", r.per_term_bound},
          {"term_distances", r.term_distances},
          {"bound_holds", r.bound_holds},
          {"eps_hat", r.eps_hat},
          {"eps_hat_optimizer", r.eps_hat_optimizer},
          {"dual_worst_ratio", r.dual_worst_ratio},
          {"dual_holds", r.dual_holds}};
}

CorrelationsReport correlations_demo(const CorrelationsConfig& config) {
  config.validate();
  const CMatrix sigma = build_state(config.sigma_spec);
  const auto db = static_cast<std::size_t>(sigma.rows());
  const std::size_t da = config.dim_a, dc = config.dim_c;
  const Channel ref = forgetful_channel(da, sigma);

  const auto compressed = compress(ref, {config.n, config.sampler, config.seed, std::nullopt});
  const Channel approx = tp_correct(compressed);

  CorrelationsReport rep;
  rep.config = config;
  rep.env_dim = compressed.env_dim;
  rep.tp_defect = compressed.tp_defect;

  // Separable input and its exact image under approx (x) Id.
  std::vector<double> weights(config.mixture_terms);
  std::vector<CMatrix> rho_a, rho_c;
  double total = 0.0;
  for (std::size_t x = 0; x < config.mixture_terms; ++x) {
    CounterRng rng(config.seed, kMixtureStream + x);
    weights[x] = 0.05 + rng.uniform();
    total += weights[x];
    rho_a.push_back(random_density(rng, da, 1 + rng.below(da)));
    rho_c.push_back(random_density(rng, dc, 1 + rng.below(dc)));
  }
  CMatrix rho_ac = CMatrix::Zero(static_cast<Eigen::Index>(da * dc), static_cast<Eigen::Index>(da * dc));
  for (std::size_t x = 0; x < config.mixture_terms; ++x) {
    weights[x] /= total;
    rho_ac += weights[x] * kron(rho_a[x], rho_c[x]);
  }
  const CMatrix marginal_c = partial_trace(rho_ac, TensorIndex{da, dc}, Keep::kRight);
  const CMatrix out = apply_extended(approx, rho_ac, dc);
  rep.left_side = hermitian_schatten_norm(out - kron(sigma, marginal_c), 1.0);

  for (std::size_t x = 0; x < config.mixture_terms; ++x) {
    rep.term_distances.push_back(hermitian_schatten_norm(chancomp::apply(approx, rho_a[x]) - sigma, 1.0));
  }
  rep.per_term_bound = *std::max_element(rep.term_distances.begin(), rep.term_distances.end());
  rep.bound_holds = rep.left_side <= rep.per_term_bound + 1e-10;

  // Dual condition on seeded effects. Each effect also nominates the input
  // x_M maximizing |<x|D*(M)|x>|, whose ||D(x_M)||_inf enters eps_hat.
  const MapKernel kr(ref), ka(approx);
  const MapKernel diff = ka - kr;
  const auto sup = one_to_p_distance(ka, kr, kInfinity, config.budget);
  double sup_inf = sup.value;
  rep.eps_hat_optimizer = static_cast<double>(db) * sup.value;
  std::vector<std::pair<double, double>> checks;  // (||D*(M)||_inf, tr M)
  for (std::size_t i = 0; i < config.dual_checks; ++i) {
    const CMatrix m = random_effect(config.seed, i, db);
    const auto eig = hermitian_eig(diff.dual(m));
    const Eigen::Index top = eig.eigenvalues.cwiseAbs().maxCoeff() == std::abs(eig.eigenvalues[0])
                                 ? 0
                                 : eig.eigenvalues.size() - 1;
    const double lhs = std::abs(eig.eigenvalues[top]);
    const CVector xm = eig.eigenvectors.col(top);
    sup_inf = std::max(sup_inf, hermitian_schatten_norm(diff.apply_pure(xm), kInfinity));
    checks.emplace_back(lhs, m.trace().real());
  }
  rep.eps_hat = static_cast<double>(db) * sup_inf;
  rep.dual_holds = true;
  for (const auto& [lhs, tr] : checks) {
    const double rhs = rep.eps_hat * tr / static_cast<double>(db);
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0);
    rep.dual_worst_ratio = std::max(rep.dual_worst_ratio, ratio);
    if (lhs > rhs + 1e-12) rep.dual_holds = false;
  }
  return rep;
}

}  // namespace chancomp
