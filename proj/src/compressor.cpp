#include "chancomp/compressor.hpp"

#include <algorithm>
#include <cmath>

#include "chancomp/errors.hpp"

namespace chancomp {

std::string to_string(Sampler s) {
  switch (s) {
    case Sampler::kHaar:
      return "haar";
    case Sampler::kBasis:
      return "basis";
    case Sampler::kBasisExhaustive:
      return "exhaustive";
  }
  return "unknown";
}

Sampler sampler_from_string(const std::string& name) {
  if (name == "haar") return Sampler::kHaar;
  if (name == "basis") return Sampler::kBasis;
  if (name == "exhaustive") return Sampler::kBasisExhaustive;
  throw ParseError("unknown sampler '" + name + "' (expected haar, basis or exhaustive)");
}

CVector sample_env_vector(Sampler sampler, std::size_t dim_env, CounterRng& rng, std::size_t slice_index) {
  if (dim_env == 0) throw DomainError("sample_env_vector: environment dimension must be >= 1");
  const auto s = static_cast<Eigen::Index>(dim_env);
  switch (sampler) {
    case Sampler::kHaar:
      return haar_vector(rng, dim_env);
    case Sampler::kBasis: {
      CVector e = CVector::Zero(s);
      e[static_cast<Eigen::Index>(rng.below(dim_env))] = 1.0;
      return e;
    }
    case Sampler::kBasisExhaustive: {
      CVector e = CVector::Zero(s);
      e[static_cast<Eigen::Index>(slice_index % dim_env)] = 1.0;
      return e;
    }
  }
  throw DomainError("sample_env_vector: unknown sampler");
}

CMatrix slice_kraus(const StinespringIsometry& v, const CVector& phi) {
  const auto de = static_cast<Eigen::Index>(v.dim_env);
  const auto db = static_cast<Eigen::Index>(v.dim_out);
  if (phi.size() != de) {
    throw ShapeError("slice_map: phi has dimension " + std::to_string(phi.size()) + ", environment has " +
                     std::to_string(de));
  }
  CMatrix k(db, v.matrix.cols());
  for (Eigen::Index b = 0; b < db; ++b) k.row(b) = phi.adjoint() * v.matrix.middleRows(b * de, de);
  return k * std::sqrt(static_cast<double>(de));
}

Channel slice_map(const StinespringIsometry& v, const CVector& phi) { return Channel::from_kraus({slice_kraus(v, phi)}); }

CompressionResult compress(const Channel& ch, const CompressionPlan& plan) {
  if (plan.n == 0) throw DomainError("compress: plan.n must be >= 1");
  const auto& ops = ch.kraus();
  const std::size_t env = ops.size();
  const double scale = std::sqrt(static_cast<double>(env) / static_cast<double>(plan.n));

  std::vector<CVector> phis;
  phis.reserve(plan.n);
  std::vector<CMatrix> sliced;
  sliced.reserve(plan.n);
  for (std::size_t i = 0; i < plan.n; ++i) {
    CounterRng rng(plan.seed, i);
    CVector phi = sample_env_vector(plan.sampler, env, rng, i);
    // (1 (x) <phi|) V = sum_e conj(phi_e) K_e under the B-slow layout.
    CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(ch.dim_out()), static_cast<Eigen::Index>(ch.dim_in()));
    for (std::size_t e = 0; e < env; ++e) {
      const Complex c = std::conj(phi[static_cast<Eigen::Index>(e)]);
      if (c != Complex(0.0, 0.0)) k.noalias() += c * ops[e];
    }
    sliced.push_back(k * scale);
    phis.push_back(std::move(phi));
  }

  CompressionResult result{plan, Channel::from_kraus(std::move(sliced)), {}, 0.0, std::nullopt, false, env,
                           std::move(phis)};
  result.witness_s = result.sliced.kraus_gram();
  result.tp_defect = result.sliced.tp().defect;
  result.large_defect_warning = result.tp_defect >= 0.5;
  if (result.tp_defect < 1.0) result.corrected = tp_correct(result);
  return result;
}

Channel tp_correct(const CompressionResult& result) {
  if (!(result.tp_defect < 1.0)) {
    throw SingularityError("tp_correct: tp_defect " + std::to_string(result.tp_defect) +
                           " >= 1, sum K^dagger K is not safely invertible");
  }
  const CMatrix s_inv_sqrt = inv_sqrt_psd(result.witness_s, 0.0);
  std::vector<CMatrix> ops;
  ops.reserve(result.sliced.kraus_count());
  for (const auto& k : result.sliced.kraus()) ops.emplace_back(k * s_inv_sqrt);
  return Channel::from_kraus(std::move(ops));
}

nlohmann::json to_json(const CompressionResult& result) {
  nlohmann::json phis = nlohmann::json::array();
  for (const auto& phi : result.phis) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& z : phi) v.push_back({z.real(), z.imag()});
    phis.push_back(std::move(v));
  }
  nlohmann::json plan = {{"n", result.plan.n}, {"sampler", to_string(result.plan.sampler)}, {"seed", result.plan.seed}};
  plan["epsilon_target"] = result.plan.epsilon_target ? nlohmann::json(*result.plan.epsilon_target) : nlohmann::json();
  nlohmann::json out = {
      {"plan", plan},
      {"env_dim", result.env_dim},
      {"sliced", to_json(result.sliced)},
      {"witness",
       {{"tp_defect", result.tp_defect},
        {"large_defect_warning", result.large_defect_warning},
        {"kraus_count", result.sliced.kraus_count()}}},
      {"phis", std::move(phis)},
  };
  out["corrected"] = result.corrected ? to_json(*result.corrected) : nlohmann::json();
  return out;
}

// ---------------------------------------------------------------------------

double SliceMeanEstimate::max_z_score(double abs_slack) const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < mean.rows(); ++i)
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      const Complex dev = mean(i, j) - target(i, j);
      worst = std::max(worst, std::abs(dev.real()) / std::max(stderr_re(i, j), abs_slack));
      worst = std::max(worst, std::abs(dev.imag()) / std::max(stderr_im(i, j), abs_slack));
    }
  return worst;
}

SliceMeanEstimate estimate_slice_mean(const Channel& ch, const CMatrix& rho, std::size_t samples, std::uint64_t seed,
                                      Sampler sampler) {
  if (samples < 2) throw DomainError("estimate_slice_mean: need at least two samples");
  const StinespringIsometry v = stinespring(ch);
  const auto db = static_cast<Eigen::Index>(ch.dim_out());
  Eigen::MatrixXd sum_re = Eigen::MatrixXd::Zero(db, db), sum_im = sum_re, sq_re = sum_re, sq_im = sum_re;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const CVector phi = sample_env_vector(sampler, v.dim_env, rng, i);
    const CMatrix k = slice_kraus(v, phi);
    const CMatrix out = k * rho * k.adjoint();
    const Eigen::MatrixXd re = out.real();
    const Eigen::MatrixXd im = out.imag();
    sum_re += re;
    sum_im += im;
    sq_re += re.cwiseProduct(re);
    sq_im += im.cwiseProduct(im);
  }
  const double m = static_cast<double>(samples);
  const Eigen::MatrixXd mean_re = sum_re / m;
  const Eigen::MatrixXd mean_im = sum_im / m;
  auto stderr_of = [m](const Eigen::MatrixXd& mean, const Eigen::MatrixXd& sq) {
    Eigen::MatrixXd var = (sq / m - mean.cwiseProduct(mean)) * (m / (m - 1.0));
    return Eigen::MatrixXd(var.cwiseMax(0.0).cwiseSqrt() / std::sqrt(m));
  };
  SliceMeanEstimate est;
  est.target = apply_operator(ch, rho);
  est.mean = mean_re.cast<Complex>() + Complex(0.0, 1.0) * mean_im.cast<Complex>();
  est.stderr_re = stderr_of(mean_re, sq_re);
  est.stderr_im = stderr_of(mean_im, sq_im);
  est.samples = samples;
  return est;
}

Psi1MomentEstimate psi1_moment_oracle(const CMatrix& sigma, const CVector& y, double p, std::size_t samples,
                                      std::uint64_t seed) {
  if (!(p >= 1.0)) throw DomainError("psi1_moment_oracle: p must be >= 1");
  if (samples < 1000) throw DomainError("psi1_moment_oracle: need at least 1000 samples");
  const auto d = y.size();
  if (d == 0 || sigma.rows() != sigma.cols() || sigma.rows() % d != 0) {
    throw ShapeError("psi1_moment_oracle: sigma dimension is not a multiple of dim(y)");
  }
  const auto s = sigma.rows() / d;
  // sigma_y = tr_B[(y (x) 1) sigma], so X = <phi|sigma_y|phi>.
  CMatrix sigma_y = CMatrix::Zero(s, s);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index c = 0; c < d; ++c) sigma_y += std::conj(y[b]) * y[c] * sigma.block(b * s, c * s, s, s);

  double sum = 0.0, sum_sq = 0.0, sum_p = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(seed, i);
    const CVector phi = haar_vector(rng, static_cast<std::size_t>(s));
    const double x = (phi.adjoint() * sigma_y * phi)(0, 0).real();
    sum += x;
    sum_sq += x * x;
    sum_p += std::pow(std::abs(x), p);
  }
  const double m = static_cast<double>(samples);
  Psi1MomentEstimate est;
  est.samples = samples;
  est.mean = sum / m;
  est.mean_stderr = std::sqrt(std::max(0.0, sum_sq / m - est.mean * est.mean) / (m - 1.0));
  est.normalized_moment = std::pow(sum_p / m, 1.0 / p) / p;
  est.bound = sigma_y.trace().real() / static_cast<double>(s);
  return est;
}

double tail_probability_oracle(const Channel& ch, const CVector& x, const CVector& y, std::size_t n, double eps,
                               std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw DomainError("tail_probability_oracle: need at least 100 trials");
  if (n == 0) throw DomainError("tail_probability_oracle: n must be >= 1");
  if (x.size() != static_cast<Eigen::Index>(ch.dim_in()) || y.size() != static_cast<Eigen::Index>(ch.dim_out())) {
    throw ShapeError("tail_probability_oracle: vector dimension mismatch");
  }
  const std::size_t env = ch.kraus_count();
  CVector w(static_cast<Eigen::Index>(env));  // w_e = <y|K_e|x>
  for (std::size_t e = 0; e < env; ++e) w[static_cast<Eigen::Index>(e)] = y.dot(ch.kraus()[e] * x);
  const double target = w.squaredNorm();
  if (target < 1e-12) throw DomainError("tail_probability_oracle: <y|N(x)|y> below 1e-12, degenerate target");

  // <y|N_phi(x)|y> = |E| |<phi|w>|^2. For Haar phi, |<phi|w/|w|>|^2 has the law of
  // E_1 / (E_1 + ... + E_s) with E_i i.i.d. unit exponentials (the squared moduli
  // of a complex Gaussian vector in a basis whose first vector is w/|w|).
  std::size_t exceed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double first = 0.0, total = 0.0;
      for (std::size_t e = 0; e < env; ++e) {
        const double u = (static_cast<double>(rng.next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double ex = -std::log(u);
        if (e == 0) first = ex;
        total += ex;
      }
      acc += first / total;
    }
    const double ratio = static_cast<double>(env) * acc / static_cast<double>(n);  // estimate / target
    if (std::abs(ratio - 1.0) > eps) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(trials);
}

}  // namespace chancomp
