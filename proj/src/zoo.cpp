#include "chancomp/zoo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chancomp/errors.hpp"
#include "chancomp/random.hpp"

namespace chancomp {

CMatrix Frame::frame_operator() const {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix op = CMatrix::Zero(d, d);
  for (const auto& v : vectors) op.noalias() += v * v.adjoint();
  return op / static_cast<double>(count);
}

Frame tight_frame(std::size_t count, std::size_t dim) {
  if (dim == 0) throw DomainError("tight_frame: dim must be >= 1");
  if (count < dim) {
    throw DomainError("tight_frame: count " + std::to_string(count) + " < dim " + std::to_string(dim) +
                      " cannot satisfy the frame identity");
  }
  Frame f{dim, count, {}};
  f.vectors.reserve(count);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t k = 1; k <= count; ++k) {
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t j = 1; j <= dim; ++j) {
      // Reduce j*k mod N first so the phase stays exact for large indices.
      const double turns = static_cast<double>((j * k) % count) / static_cast<double>(count);
      v[static_cast<Eigen::Index>(j - 1)] = norm * std::polar(1.0, 2.0 * std::numbers::pi * turns);
    }
    f.vectors.push_back(std::move(v));
  }
  return f;
}

Channel qc_channel(std::size_t dim_in, std::size_t dim_out) {
  if (dim_out < dim_in) throw DomainError("qc_channel: requires dim_out >= dim_in");
  const Frame f = tight_frame(dim_out, dim_in);
  const double amp = std::sqrt(static_cast<double>(dim_in) / static_cast<double>(dim_out));
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < dim_out; ++i) {
    CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(dim_out), static_cast<Eigen::Index>(dim_in));
    k.row(static_cast<Eigen::Index>(i)) = amp * f.vectors[i].adjoint();
    ops.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(ops));
}

Channel cq_channel(std::size_t dim_in, std::size_t dim_out) {
  if (dim_in < dim_out) throw DomainError("cq_channel: requires dim_in >= dim_out");
  const Frame f = tight_frame(dim_in, dim_out);
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < dim_in; ++i) {
    CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(dim_out), static_cast<Eigen::Index>(dim_in));
    k.col(static_cast<Eigen::Index>(i)) = f.vectors[i];
    ops.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(ops));
}

CMatrix pauli_shift(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix x = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

CMatrix pauli_clock(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix z = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
  return z;
}

Channel randomizing_channel(std::size_t dim) {
  if (dim == 0) throw DomainError("randomizing_channel: dim must be >= 1");
  const CMatrix x = pauli_shift(dim);
  const CMatrix z = pauli_clock(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<CMatrix> ops;
  ops.reserve(dim * dim);
  CMatrix xj = CMatrix::Identity(d, d);
  for (std::size_t j = 0; j < dim; ++j) {
    CMatrix zk = CMatrix::Identity(d, d);
    for (std::size_t k = 0; k < dim; ++k) {
      ops.emplace_back(xj * zk / static_cast<double>(dim));
      zk = zk * z;
    }
    xj = xj * x;
  }
  return Channel::from_kraus(std::move(ops));
}

CMatrix werner_formula(const CMatrix& x, double lambda) {
  const auto d = x.rows();
  const double denom = static_cast<double>(d) + 2.0 * lambda - 1.0;
  return (x.trace() * CMatrix::Identity(d, d) + (2.0 * lambda - 1.0) * x.transpose()) / denom;
}

Channel werner_channel(std::size_t dim, double lambda) {
  if (dim < 2) throw DomainError("werner_channel: dim must be >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("werner_channel: lambda outside [0, 1]");
  const auto d = static_cast<Eigen::Index>(dim);
  // tau = (1 + (2 lambda - 1) F) / (d (d + 2 lambda - 1)), F the swap on A (x) A.
  CMatrix tau = CMatrix::Identity(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) tau(a * d + b, b * d + a) += 2.0 * lambda - 1.0;
  tau /= static_cast<double>(d) * (static_cast<double>(d) + 2.0 * lambda - 1.0);
  return kraus_from_choi({tau, TensorIndex{dim, dim}});
}

Channel forgetful_channel(std::size_t dim_in, const CMatrix& sigma) {
  require_state(sigma, "forgetful_channel output state");
  const auto eig = hermitian_eig(sigma);
  const auto da = static_cast<Eigen::Index>(dim_in);
  const auto db = sigma.rows();
  std::vector<CMatrix> ops;
  for (Eigen::Index b = db - 1; b >= 0; --b) {
    const double s = clip_eigenvalue(eig.eigenvalues[b]);
    if (s <= 0.0) continue;
    for (Eigen::Index a = 0; a < da; ++a) {
      CMatrix k = CMatrix::Zero(db, da);
      k.col(a) = std::sqrt(s) * eig.eigenvectors.col(b);
      ops.push_back(std::move(k));
    }
  }
  return Channel::from_kraus(std::move(ops));
}

Channel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env, std::uint64_t seed) {
  if (dim_in == 0 || dim_out == 0 || dim_env == 0) throw DomainError("random_channel: dims must be >= 1");
  if (dim_out * dim_env < dim_in) throw DomainError("random_channel: requires dim_out * dim_env >= dim_in");
  CounterRng rng(seed, 0);
  const CMatrix g = gaussian_matrix(rng, dim_out * dim_env, dim_in);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const auto m = g.rows();
  const auto n = g.cols();
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, n);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
  }
  const auto de = static_cast<Eigen::Index>(dim_env);
  std::vector<CMatrix> ops;
  for (Eigen::Index e = 0; e < de; ++e) {
    CMatrix k(static_cast<Eigen::Index>(dim_out), n);
    for (Eigen::Index b = 0; b < k.rows(); ++b) k.row(b) = q.row(b * de + e);
    ops.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(ops));
}

Channel unitary_channel(const CMatrix& u) { return Channel::from_kraus({u}); }

Channel identity_channel(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return Channel::from_kraus({CMatrix::Identity(d, d)});
}

}  // namespace chancomp
