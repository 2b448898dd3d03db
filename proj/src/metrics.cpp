#include "chancomp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chancomp/errors.hpp"
#include "chancomp/random.hpp"

namespace chancomp {

namespace {

constexpr double kLogFloor = 1e-15;

CMatrix herm(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

HermitianEig eig_of(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigenvalues_of(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double norm_of_eigenvalues(const RVector& ev, double p) {
  if (ev.size() == 0) return 0.0;
  const double top = ev.cwiseAbs().maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  if (p == 1.0) return ev.cwiseAbs().sum();
  double acc = 0.0;
  for (double l : ev) acc += std::pow(std::abs(l) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

CMatrix identity(std::size_t d) {
  return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

void check_state(const CMatrix& rho, double tol, const char* what) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw DomainError(std::string(what) + ": not a square matrix");
  if (!is_hermitian(rho, tol)) throw DomainError(std::string(what) + ": not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol) throw DomainError(std::string(what) + ": trace differs from 1");
  const RVector ev = eigenvalues_of(rho);
  if (ev[0] < -tol) throw DomainError(std::string(what) + ": not positive semidefinite");
}

void require_same_dims(const Channel& a, const Channel& b, const char* what) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw ShapeError(std::string(what) + ": channel dimensions differ");
  }
}

/// Mixed states of varying rank drawn from substreams of `seed`.
CMatrix pool_mixed_state(std::size_t dim, std::uint64_t seed, std::size_t i) {
  CounterRng rng(mix64(seed ^ 0x5EEDF00DULL), i);
  const std::size_t rank = 1 + (i % dim);
  return random_density(rng, dim, rank);
}

}  // namespace

// ---------------------------------------------------------------------------

void OptBudget::validate() const {
  if (restarts < 1) throw DomainError("OptBudget: restarts must be >= 1");
  if (sample_pool < restarts) throw DomainError("OptBudget: sample_pool must be >= restarts");
  if (!(initial_step > 0.0) || !(min_step > 0.0)) throw DomainError("OptBudget: step sizes must be positive");
}

OptBudget OptBudget::quick() {
  OptBudget b;
  b.restarts = 5;
  b.iterations = 50;
  b.sample_pool = 300;
  return b;
}

OptBudget OptBudget::pool_only(std::size_t pool, std::uint64_t seed) {
  OptBudget b;
  b.restarts = 1;
  b.iterations = 0;
  b.sample_pool = pool;
  b.seed = seed;
  return b;
}

nlohmann::json to_json(const OptBudget& b) {
  return {{"restarts", b.restarts},         {"iterations", b.iterations}, {"initial_step", b.initial_step},
          {"min_step", b.min_step},         {"sample_pool", b.sample_pool}, {"seed", b.seed}};
}

nlohmann::json to_json(const MetricReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.witness.rows(); ++i)
    for (Eigen::Index j = 0; j < r.witness.cols(); ++j) w.push_back({r.witness(i, j).real(), r.witness(i, j).imag()});
  nlohmann::json out = {{"quantity", r.quantity}, {"value", r.value}, {"witness", std::move(w)},
                        {"budget", to_json(r.budget)}, {"seed", r.seed}};
  if (r.witness_y) {
    nlohmann::json y = nlohmann::json::array();
    for (const auto& z : *r.witness_y) y.push_back({z.real(), z.imag()});
    out["witness_y"] = std::move(y);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CVector> pure_state_pool(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<CVector> pool;
  pool.reserve(count);
  const auto d = static_cast<Eigen::Index>(dim);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < dim) {
      pool.push_back(CVector::Unit(d, static_cast<Eigen::Index>(i)));
    } else {
      CounterRng rng(seed, i);
      pool.push_back(haar_vector(rng, dim));
    }
  }
  return pool;
}

SphereOptimum maximize_on_sphere(const SphereProblem& problem, const OptBudget& budget) {
  budget.validate();
  std::vector<CVector> candidates = problem.seeds;
  for (auto& v : pure_state_pool(problem.dim, budget.sample_pool, budget.seed)) candidates.push_back(std::move(v));

  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = problem.value(candidates[i]);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  SphereOptimum best{scores[order[0]], candidates[order[0]]};
  const std::size_t restarts = budget.iterations == 0 ? 0 : std::min(budget.restarts, order.size());
  for (std::size_t r = 0; r < restarts; ++r) {
    CVector psi = candidates[order[r]];
    double f = scores[order[r]];
    double step = budget.initial_step;
    for (std::size_t it = 0; it < budget.iterations; ++it) {
      const double tiny = 1e-14 * std::max(1.0, std::abs(f));
      const CMatrix h = herm(problem.linearization(psi));
      if (problem.convex) {
        const auto eig = eig_of(h);
        const CVector top = eig.eigenvectors.col(eig.eigenvalues.size() - 1);
        const double ft = problem.value(top);
        if (ft > f + tiny) {
          psi = top;
          f = ft;
          continue;
        }
      }
      CVector g = h * psi;
      g -= psi.dot(g) * psi;
      const double gn = g.norm();
      if (gn < 1e-14) break;
      bool improved = false;
      while (step >= budget.min_step) {
        CVector cand = psi + (step / gn) * g;
        cand.normalize();
        const double fc = problem.value(cand);
        if (fc > f + tiny) {
          psi = std::move(cand);
          f = fc;
          step = std::min(2.0 * step, budget.initial_step);
          improved = true;
          break;
        }
        step /= 2.0;
      }
      if (!improved) break;
    }
    if (f > best.value) best = {f, psi};
  }
  best.value = problem.value(best.argmax);
  return best;
}

// ---------------------------------------------------------------------------

MetricReport one_to_p_distance(const MapKernel& ch1, const MapKernel& ch2, double p, const OptBudget& budget) {
  if (!(p >= 1.0)) throw DomainError("one_to_p_distance: p must be >= 1");
  if (ch1.dim_in() != ch2.dim_in() || ch1.dim_out() != ch2.dim_out()) {
    throw ShapeError("one_to_p_distance: channel dimensions differ");
  }
  const MapKernel diff = ch1 - ch2;
  SphereProblem prob;
  prob.dim = diff.dim_in();
  prob.value = [&](const CVector& psi) { return norm_of_eigenvalues(eigenvalues_of(diff.apply_pure(psi)), p); };
  prob.linearization = [&](const CVector& psi) {
    const auto eig = eig_of(diff.apply_pure(psi));
    const RVector& l = eig.eigenvalues;
    RVector w = RVector::Zero(l.size());
    const double total = norm_of_eigenvalues(l, p);
    if (total > 0.0) {
      if (std::isinf(p)) {
        Eigen::Index idx = 0;
        l.cwiseAbs().maxCoeff(&idx);
        w[idx] = l[idx] >= 0.0 ? 1.0 : -1.0;
      } else {
        for (Eigen::Index i = 0; i < l.size(); ++i) {
          const double s = l[i] > 0.0 ? 1.0 : (l[i] < 0.0 ? -1.0 : 0.0);
          w[i] = s * std::pow(std::abs(l[i]) / total, p - 1.0);
        }
      }
    }
    const CMatrix g = eig.eigenvectors * w.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    return diff.dual(g);
  };
  const auto opt = maximize_on_sphere(prob, budget);
  return {"one_to_p(p=" + (std::isinf(p) ? std::string("inf") : std::to_string(p)) + ")", opt.value,
          outer(opt.argmax), std::nullopt, budget, budget.seed};
}

MetricReport one_to_p_distance(const Channel& ch1, const Channel& ch2, double p, const OptBudget& budget) {
  require_same_dims(ch1, ch2, "one_to_p_distance");
  return one_to_p_distance(MapKernel(ch1), MapKernel(ch2), p, budget);
}

MetricReport max_output_infnorm(const Channel& ch, const OptBudget& budget) {
  const MapKernel k(ch);
  SphereProblem prob;
  prob.dim = ch.dim_in();
  prob.value = [&](const CVector& psi) { return eigenvalues_of(k.apply_pure(psi)).maxCoeff(); };
  prob.linearization = [&](const CVector& psi) {
    const auto eig = eig_of(k.apply_pure(psi));
    return k.dual(outer(eig.eigenvectors.col(eig.eigenvalues.size() - 1)));
  };
  const auto opt = maximize_on_sphere(prob, budget);
  return {"max_output_infnorm", opt.value, outer(opt.argmax), std::nullopt, budget, budget.seed};
}

namespace {

struct SlackEval {
  double value;
  CVector y;
  double sign;  // +1: upper inequality active, -1: lower
};

// Upper slack matrix eps(N(x) + 1/|B|) - D(x), lower eps(N(x) + 1/|B|) + D(x).
SlackEval slack_at(const MapKernel& ref, const MapKernel& diff, double eps, const CVector& x) {
  const std::size_t db = ref.dim_out();
  const CMatrix base = eps * (ref.apply_pure(x) + identity(db) * (x.squaredNorm() / static_cast<double>(db)));
  const CMatrix d = diff.apply_pure(x);
  const auto up = eig_of(base - d);
  const auto lo = eig_of(base + d);
  if (up.eigenvalues[0] <= lo.eigenvalues[0]) return {up.eigenvalues[0], up.eigenvectors.col(0), 1.0};
  return {lo.eigenvalues[0], lo.eigenvectors.col(0), -1.0};
}

}  // namespace

MetricReport ordering_slack_at(const Channel& ref, const Channel& approx, double eps, const CVector& x) {
  require_same_dims(ref, approx, "ordering_slack_at");
  if (!(eps > 0.0)) throw DomainError("ordering_slack_at: eps must be positive");
  if (x.size() != static_cast<Eigen::Index>(ref.dim_in())) throw ShapeError("ordering_slack_at: input dimension");
  const MapKernel kr(ref);
  const MapKernel diff = MapKernel(approx) - kr;
  const CVector xn = x.normalized();
  const auto s = slack_at(kr, diff, eps, xn);
  return {"ordering_slack", s.value, outer(xn), s.y, OptBudget::pool_only(1, 0), 0};
}

MetricReport ordering_margin(const Channel& ref, const Channel& approx, double eps, const OptBudget& budget,
                             const std::vector<CVector>& extra_inputs) {
  require_same_dims(ref, approx, "ordering_margin");
  if (!(eps > 0.0)) throw DomainError("ordering_margin: eps must be positive");
  const MapKernel kr(ref);
  const MapKernel diff = MapKernel(approx) - kr;
  const std::size_t db = ref.dim_out();
  SphereProblem prob;
  prob.dim = ref.dim_in();
  for (const auto& v : extra_inputs) prob.seeds.push_back(v.normalized());
  prob.value = [&](const CVector& x) { return -slack_at(kr, diff, eps, x).value; };
  prob.linearization = [&](const CVector& x) {
    const auto s = slack_at(kr, diff, eps, x);
    const CMatrix yy = outer(s.y);
    const CMatrix adj = eps * (kr.dual(yy) + identity(ref.dim_in()) / static_cast<double>(db)) - s.sign * diff.dual(yy);
    return CMatrix(-adj);
  };
  const auto opt = maximize_on_sphere(prob, budget);
  const auto s = slack_at(kr, diff, eps, opt.argmax);
  return {"ordering_margin", s.value, outer(opt.argmax), s.y, budget, budget.seed};
}

MetricReport measured_ordering_parameter(const Channel& ref, const Channel& approx, const OptBudget& budget) {
  require_same_dims(ref, approx, "measured_ordering_parameter");
  const MapKernel kr(ref);
  const MapKernel diff = MapKernel(approx) - kr;
  const std::size_t db = ref.dim_out();
  struct Eval {
    double value;
    CVector y;
    double sign;
  };
  auto eval = [&](const CVector& x) -> Eval {
    const CMatrix t = kr.apply_pure(x) + identity(db) / static_cast<double>(db);
    const auto te = eig_of(t);
    const RVector inv_sqrt = te.eigenvalues.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const CMatrix t_is = te.eigenvectors * inv_sqrt.cast<Complex>().asDiagonal() * te.eigenvectors.adjoint();
    const auto me = eig_of(t_is * diff.apply_pure(x) * t_is);
    Eigen::Index idx = 0;
    me.eigenvalues.cwiseAbs().maxCoeff(&idx);
    CVector y = t_is * me.eigenvectors.col(idx);
    y.normalize();
    return {std::abs(me.eigenvalues[idx]), y, me.eigenvalues[idx] >= 0.0 ? 1.0 : -1.0};
  };
  SphereProblem prob;
  prob.dim = ref.dim_in();
  prob.value = [&](const CVector& x) { return eval(x).value; };
  prob.linearization = [&](const CVector& x) {
    // Dinkelbach step for the ratio |<y|D|y>| / <y|T|y>.
    const auto e = eval(x);
    const CMatrix yy = outer(e.y);
    const CMatrix t_dual = kr.dual(yy) + identity(ref.dim_in()) / static_cast<double>(db);
    return CMatrix(e.sign * diff.dual(yy) - e.value * t_dual);
  };
  const auto opt = maximize_on_sphere(prob, budget);
  const auto e = eval(opt.argmax);
  return {"ordering_parameter", e.value, outer(opt.argmax), e.y, budget, budget.seed};
}

// ---------------------------------------------------------------------------

double renyi_entropy_unchecked(const CMatrix& rho, double p) {
  if (!(p >= 1.0)) throw DomainError("renyi_entropy: p must be >= 1");
  const RVector ev = eigenvalues_of(rho);
  if (std::isinf(p)) return -std::log(ev.maxCoeff());
  if (p == 1.0) {
    double s = 0.0;
    for (double l : ev) {
      l = clip_eigenvalue(l);
      if (l > 0.0) s -= l * std::log(l);
    }
    return s;
  }
  double acc = 0.0;
  for (double l : ev) {
    l = clip_eigenvalue(l);
    if (l > 0.0) acc += std::pow(l, p);
  }
  return std::log(acc) / (1.0 - p);
}

double renyi_entropy(const CMatrix& rho, double p) {
  check_state(rho, 1e-9, "renyi_entropy");
  return std::max(0.0, renyi_entropy_unchecked(rho, p));
}

double von_neumann_entropy(const CMatrix& rho) { return renyi_entropy(rho, 1.0); }

double fidelity_unchecked(const CMatrix& rho, const CMatrix& sigma) {
  return schatten_norm(sqrt_psd(herm(rho)) * sqrt_psd(herm(sigma)), 1.0);
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  check_state(rho, 1e-9, "fidelity (first argument)");
  check_state(sigma, 1e-9, "fidelity (second argument)");
  if (rho.rows() != sigma.rows()) throw ShapeError("fidelity: dimension mismatch");
  return std::clamp(fidelity_unchecked(rho, sigma), 0.0, 1.0);
}

double entropy_exchange(const Channel& ch, const CMatrix& rho) {
  if (rho.rows() != static_cast<Eigen::Index>(ch.dim_in())) throw ShapeError("entropy_exchange: input dimension");
  check_state(rho, 1e-9, "entropy_exchange input");
  const auto v = stinespring(ch);
  const CMatrix joint = v.matrix * rho * v.matrix.adjoint();
  const CMatrix env = partial_trace(herm(joint), TensorIndex{v.dim_out, v.dim_env}, Keep::kRight);
  return std::max(0.0, renyi_entropy_unchecked(env, 1.0));
}

MetricReport entropy_rank_bound(const Channel& ch, const OptBudget& budget) {
  const MapKernel k(ch);
  // Pure inputs: |S(psi) - S(N(psi))| = S(N(psi)).
  SphereProblem prob;
  prob.dim = ch.dim_in();
  prob.convex = false;
  prob.value = [&](const CVector& psi) { return std::max(0.0, renyi_entropy_unchecked(k.apply_pure(psi), 1.0)); };
  prob.linearization = [&](const CVector& psi) {
    const auto eig = eig_of(k.apply_pure(psi));
    RVector g(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = -std::log(std::max(eig.eigenvalues[i], kLogFloor)) - 1.0;
    return k.dual(eig.eigenvectors * g.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint());
  };
  const auto opt = maximize_on_sphere(prob, budget);
  MetricReport report{"entropy_rank_bound", opt.value, outer(opt.argmax), std::nullopt, budget, budget.seed};

  const std::size_t d = ch.dim_in();
  auto mixed_score = [&](const CMatrix& rho) {
    return std::abs(renyi_entropy_unchecked(rho, 1.0) - renyi_entropy_unchecked(k.apply(rho), 1.0));
  };
  std::vector<CMatrix> mixed{identity(d) / static_cast<double>(d)};
  for (std::size_t i = 0; i < budget.sample_pool; ++i) mixed.push_back(pool_mixed_state(d, budget.seed, i));
  for (const auto& rho : mixed) {
    const double s = mixed_score(rho);
    if (s > report.value) {
      report.value = s;
      report.witness = rho;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const ApproximationReport& r) {
  return {{"pool_size", r.pool_size},
          {"omega_pool_size", r.omega_pool_size},
          {"entropy_units", "nats"},
          {"max_trace_distance", r.max_trace_distance},
          {"max_renyi2_deviation", r.max_renyi2_deviation},
          {"max_renyi_inf_deviation", r.max_renyi_inf_deviation},
          {"max_entropy_deviation", r.max_entropy_deviation},
          {"max_fidelity_deviation", r.max_fidelity_deviation},
          {"fannes_audenaert_eps", r.fannes_audenaert_eps},
          {"fannes_audenaert_rhs", r.fannes_audenaert_rhs},
          {"seed", r.seed}};
}

ApproximationReport approximation_report(const Channel& ref, const Channel& approx, const OptBudget& budget,
                                         std::size_t omega_pool) {
  require_same_dims(ref, approx, "approximation_report");
  const MapKernel kr(ref);
  const MapKernel ka(approx);
  const std::size_t da = ref.dim_in();
  const std::size_t db = ref.dim_out();

  std::vector<CMatrix> omegas{identity(db) / static_cast<double>(db)};
  for (std::size_t i = 0; i < omega_pool; ++i) {
    if (i % 2 == 0) {
      CounterRng rng(mix64(budget.seed ^ 0x0E6AULL), i);
      omegas.push_back(outer(haar_vector(rng, db)));
    } else {
      omegas.push_back(pool_mixed_state(db, mix64(budget.seed ^ 0x0E6BULL), i));
    }
  }
  std::vector<CMatrix> omega_roots;
  for (const auto& w : omegas) omega_roots.push_back(sqrt_psd(w));

  ApproximationReport rep;
  rep.pool_size = budget.sample_pool;
  rep.omega_pool_size = omegas.size();
  rep.seed = budget.seed;
  const auto pure_pool = pure_state_pool(da, budget.sample_pool, budget.seed);
  for (std::size_t i = 0; i < budget.sample_pool; ++i) {
    const CMatrix rho = (i % 2 == 0) ? outer(pure_pool[i]) : pool_mixed_state(da, budget.seed, i);
    const CMatrix out_ref = herm(kr.apply(rho));
    const CMatrix out_apx = herm(ka.apply(rho));
    rep.max_trace_distance =
        std::max(rep.max_trace_distance, norm_of_eigenvalues(eigenvalues_of(out_apx - out_ref), 1.0));
    rep.max_renyi2_deviation = std::max(
        rep.max_renyi2_deviation, std::abs(renyi_entropy_unchecked(out_apx, 2.0) - renyi_entropy_unchecked(out_ref, 2.0)));
    rep.max_renyi_inf_deviation =
        std::max(rep.max_renyi_inf_deviation,
                 std::abs(renyi_entropy_unchecked(out_apx, kInfinity) - renyi_entropy_unchecked(out_ref, kInfinity)));
    rep.max_entropy_deviation = std::max(
        rep.max_entropy_deviation, std::abs(renyi_entropy_unchecked(out_apx, 1.0) - renyi_entropy_unchecked(out_ref, 1.0)));
    const CMatrix root_ref = sqrt_psd(out_ref);
    const CMatrix root_apx = sqrt_psd(out_apx);
    for (const auto& wr : omega_roots) {
      const double f_ref = schatten_norm(root_ref * wr, 1.0);
      const double f_apx = schatten_norm(root_apx * wr, 1.0);
      rep.max_fidelity_deviation = std::max(rep.max_fidelity_deviation, std::abs(f_apx - f_ref));
    }
  }
  const double log_b = std::log(static_cast<double>(db));
  if (log_b > 0.0) {
    const double eps = rep.max_trace_distance * log_b / 2.0;
    rep.fannes_audenaert_eps = eps;
    rep.fannes_audenaert_rhs = eps + 2.0 * eps / log_b + std::sqrt(eps / log_b);
  } else {
    rep.fannes_audenaert_rhs = kInfinity;
  }
  return rep;
}

}  // namespace chancomp
