#pragma once

// Seeded generators and independent reference computations shared by the
// test suites. Reference routines here deliberately avoid the library's own
// code paths (no stacked-vec Choi, no kernels) so they can act as oracles.

#include <cmath>
#include <cstdint>
#include <vector>

#include "chancomp/channel.hpp"
#include "chancomp/linalg.hpp"
#include "chancomp/random.hpp"

namespace chancomp::testing {

inline CMatrix random_hermitian(std::uint64_t seed, std::size_t dim) {
  CounterRng rng(seed, 0xA11CE);
  const CMatrix g = gaussian_matrix(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

inline CMatrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  CounterRng rng(seed, 0xB0B);
  return gaussian_matrix(rng, rows, cols);
}

inline CVector random_pure(std::uint64_t seed, std::size_t dim) {
  CounterRng rng(seed, 0xC0FFEE);
  return haar_vector(rng, dim);
}

inline CMatrix random_state(std::uint64_t seed, std::size_t dim, std::size_t rank = 0) {
  CounterRng rng(seed, 0xD1CE);
  return random_density(rng, dim, rank == 0 ? dim : rank);
}

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

inline CMatrix basis_op(std::size_t dim, std::size_t j, std::size_t k) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = 1.0;
  return m;
}

/// sum_i K_i X K_i^dagger, one term at a time.
inline CMatrix apply_direct(const std::vector<CMatrix>& kraus, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

/// tau = (1/d) sum_{jk} |j><k| (x) N(|j><k|), straight from the definition.
inline CMatrix choi_by_definition(const Channel& ch) {
  const std::size_t da = ch.dim_in();
  const auto db = static_cast<Eigen::Index>(ch.dim_out());
  CMatrix tau = CMatrix::Zero(static_cast<Eigen::Index>(da) * db, static_cast<Eigen::Index>(da) * db);
  for (std::size_t j = 0; j < da; ++j)
    for (std::size_t k = 0; k < da; ++k)
      tau.block(static_cast<Eigen::Index>(j) * db, static_cast<Eigen::Index>(k) * db, db, db) =
          apply_direct(ch.kraus(), basis_op(da, j, k));
  return tau / static_cast<double>(da);
}

/// Maximally entangled vector (1/sqrt d) sum_j |jj>.
inline CVector max_entangled(std::size_t d) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t j = 0; j < d; ++j) v[static_cast<Eigen::Index>(j * d + j)] = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

/// Swap operator on C^d (x) C^d.
inline CMatrix swap_operator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix f = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) f(a * n + b, b * n + a) = 1.0;
  return f;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Trace norm of a Hermitian matrix from its eigenvalues.
inline double trace_norm(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> s((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return s.eigenvalues().cwiseAbs().sum();
}

}  // namespace chancomp::testing
