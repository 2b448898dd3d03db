#pragma once

// Random environment slicing. A channel N(X) = tr_E(V X V^dagger) is
// replaced by the average of n single-Kraus maps
//
//   N_phi(X) = |E| (1 (x) <phi|) V X V^dagger (1 (x) |phi>),
//
// each an unbiased estimator of N when phi is drawn from an isotropic measure
// on the environment. The average has at most n Kraus operators; an optional
// S^{-1/2} correction makes it exactly trace preserving.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chancomp/channel.hpp"
#include "chancomp/random.hpp"

namespace chancomp {

enum class Sampler {
  kHaar,             // uniform on the unit sphere of C^|E|
  kBasis,            // uniform over the standard basis, with replacement
  kBasisExhaustive,  // slice i uses basis vector i mod |E|; exact when |E| divides n
};

std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& name);

struct CompressionPlan {
  std::size_t n = 1;
  Sampler sampler = Sampler::kHaar;
  std::uint64_t seed = 0;
  std::optional<double> epsilon_target;  // echoed in reports only
};

struct CompressionResult {
  CompressionPlan plan;
  Channel sliced;
  CMatrix witness_s;  // sum_i K_i^dagger K_i of the sliced map
  double tp_defect = 0.0;
  std::optional<Channel> corrected;
  bool large_defect_warning = false;  // tp_defect >= 0.5
  std::size_t env_dim = 0;
  std::vector<CVector> phis;
};

/// Draw one environment vector of dimension s.
CVector sample_env_vector(Sampler sampler, std::size_t dim_env, CounterRng& rng, std::size_t slice_index = 0);

/// Kraus operator sqrt(|E|) (1 (x) <phi|) V.
CMatrix slice_kraus(const StinespringIsometry& v, const CVector& phi);

/// The single-Kraus CP map N_phi.
Channel slice_map(const StinespringIsometry& v, const CVector& phi);

/// Average of plan.n slice maps; slice i draws from substream (plan.seed, i).
CompressionResult compress(const Channel& ch, const CompressionPlan& plan);

/// Kraus set {K_i S^{-1/2}}; throws SingularityError when tp_defect >= 1.
Channel tp_correct(const CompressionResult& result);

nlohmann::json to_json(const CompressionResult& result);

// ---------------------------------------------------------------------------
// Monte-Carlo oracles

struct SliceMeanEstimate {
  CMatrix target;     // N(rho)
  CMatrix mean;       // sample mean of N_phi(rho)
  Eigen::MatrixXd stderr_re;  // entrywise standard error of the real parts
  Eigen::MatrixXd stderr_im;  // entrywise standard error of the imaginary parts
  std::size_t samples = 0;

  /// max over entries of |mean - target| / stderr (with an absolute floor
  /// `abs_slack` for entries that have no spread).
  double max_z_score(double abs_slack = 1e-12) const;
};

/// Sample mean of N_phi(rho) over `samples` Haar slices.
SliceMeanEstimate estimate_slice_mean(const Channel& ch, const CMatrix& rho, std::size_t samples, std::uint64_t seed,
                                      Sampler sampler = Sampler::kHaar);

struct Psi1MomentEstimate {
  double normalized_moment = 0.0;  // (E|X|^p)^{1/p} / p
  double bound = 0.0;              // (1/s) tr[(y (x) 1) sigma]
  double mean = 0.0;
  double mean_stderr = 0.0;
  std::size_t samples = 0;
};

/// X = tr[(y (x) phi) sigma] for Haar phi in C^s, sigma a state on C^d (x) C^s.
Psi1MomentEstimate psi1_moment_oracle(const CMatrix& sigma, const CVector& y, double p, std::size_t samples,
                                      std::uint64_t seed);

/// Fraction of `trials` independent n-slice averages of <y|N_phi(x)|y> whose
/// relative deviation from <y|N(x)|y> exceeds eps.
double tail_probability_oracle(const Channel& ch, const CVector& x, const CVector& y, std::size_t n, double eps,
                               std::size_t trials, std::uint64_t seed);

}  // namespace chancomp
