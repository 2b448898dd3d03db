#pragma once

// Approximation-quality functionals. Every supremum over input states is
// estimated by scoring a seeded pool of pure states and refining the best of
// them on the unit sphere; returned values are lower bounds certified by the
// recorded witness, never claimed global optima. Entropies use natural log.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chancomp/channel.hpp"
#include "chancomp/map_kernel.hpp"

namespace chancomp {

struct OptBudget {
  std::size_t restarts = 20;
  std::size_t iterations = 200;  // refinement iterations per restart; 0 scores the pool only
  double initial_step = 0.5;
  double min_step = 1e-10;
  std::size_t sample_pool = 2000;
  std::uint64_t seed = 0;

  void validate() const;
  static OptBudget quick();
  static OptBudget pool_only(std::size_t pool, std::uint64_t seed);
};

struct MetricReport {
  std::string quantity;
  double value = 0.0;
  CMatrix witness;                   // input state achieving `value`
  std::optional<CVector> witness_y;  // output direction, for ordering margins
  OptBudget budget;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const OptBudget& b);
nlohmann::json to_json(const MetricReport& r);

// ---------------------------------------------------------------------------
// Generic maximization over the unit sphere of C^dim.

struct SphereProblem {
  std::size_t dim = 0;
  std::function<double(const CVector&)> value;
  /// Hermitian H(psi) whose quadratic form linearizes the objective at psi:
  /// value(psi + d) ~ value(psi) + 2 Re <d, H psi>. When `convex` is set the
  /// objective is convex (or quasi-convex with a Dinkelbach linearization) in
  /// |psi><psi| and the top eigenvector of H is a monotone ascent step.
  std::function<CMatrix(const CVector&)> linearization;
  bool convex = true;
  /// Extra candidates scored ahead of the seeded pool.
  std::vector<CVector> seeds;
};

struct SphereOptimum {
  double value = 0.0;
  CVector argmax;
};

SphereOptimum maximize_on_sphere(const SphereProblem& problem, const OptBudget& budget);

/// Seeded pool: the standard basis first, then Haar vectors from (seed, i).
std::vector<CVector> pure_state_pool(std::size_t dim, std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Distances and ordering

/// sup over pure inputs of || (ch1 - ch2)(psi) ||_p.
MetricReport one_to_p_distance(const Channel& ch1, const Channel& ch2, double p, const OptBudget& budget);
MetricReport one_to_p_distance(const MapKernel& ch1, const MapKernel& ch2, double p, const OptBudget& budget);

/// sup over pure inputs of the largest output eigenvalue.
MetricReport max_output_infnorm(const Channel& ch, const OptBudget& budget);

/// Exact min over unit y of the two slacks eps<y|N(x)|y> + eps/|B| -+ <y|(approx - ref)(x)|y>
/// at a fixed input x; `witness_y` attains it.
MetricReport ordering_slack_at(const Channel& ref, const Channel& approx, double eps, const CVector& x);

/// min over pure x of ordering_slack_at; negative values certify a violation.
MetricReport ordering_margin(const Channel& ref, const Channel& approx, double eps, const OptBudget& budget,
                             const std::vector<CVector>& extra_inputs = {});

/// Smallest eps for which -eps (N + 1/|B|) <= approx - ref <= eps (N + 1/|B|)
/// holds on all inputs, estimated from below: sup_x || T^{-1/2} D T^{-1/2} ||_inf
/// with T = N(x) + 1/|B| and D = (approx - ref)(x).
MetricReport measured_ordering_parameter(const Channel& ref, const Channel& approx, const OptBudget& budget);

// ---------------------------------------------------------------------------
// Entropies and fidelities

/// S_p in natural log; p = 1 gives von Neumann, p = kInfinity min-entropy.
double renyi_entropy(const CMatrix& rho, double p);
double von_neumann_entropy(const CMatrix& rho);

/// Same formulas on a PSD operator of any trace; no state validation.
double renyi_entropy_unchecked(const CMatrix& rho, double p);

/// F = || sqrt(rho) sqrt(sigma) ||_1.
double fidelity(const CMatrix& rho, const CMatrix& sigma);
double fidelity_unchecked(const CMatrix& rho, const CMatrix& sigma);

/// Entropy of the environment marginal tr_B[V rho V^dagger].
double entropy_exchange(const Channel& ch, const CMatrix& rho);

/// max over inputs of |S(rho) - S(N(rho))|, a lower bound on log r_K of any
/// channel approximating ch in output entropy.
MetricReport entropy_rank_bound(const Channel& ch, const OptBudget& budget);

struct ApproximationReport {
  std::size_t pool_size = 0;
  std::size_t omega_pool_size = 0;
  double max_trace_distance = 0.0;    // max ||approx(rho) - ref(rho)||_1
  double max_renyi2_deviation = 0.0;  // max |S_2 - S_2|
  double max_renyi_inf_deviation = 0.0;
  double max_entropy_deviation = 0.0;   // von Neumann
  double max_fidelity_deviation = 0.0;  // max over rho, omega
  double fannes_audenaert_eps = 0.0;    // trace-distance deviation expressed per log|B|
  double fannes_audenaert_rhs = 0.0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const ApproximationReport& r);

ApproximationReport approximation_report(const Channel& ref, const Channel& approx, const OptBudget& budget,
                                         std::size_t omega_pool = 32);

}  // namespace chancomp
