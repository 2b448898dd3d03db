#include "chancomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chancomp/errors.hpp"

namespace chancomp {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kClip = 1e-12;

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + " must be square, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double norm_from_values(const RVector& sigma, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten norm requires p >= 1");
  if (sigma.size() == 0) return 0.0;
  if (std::isinf(p)) return sigma.cwiseAbs().maxCoeff();
  const double top = sigma.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  // Scale by the top value so large p does not overflow.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) acc += std::pow(std::abs(sigma[i]) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

}  // namespace

TensorIndex::TensorIndex(std::initializer_list<std::size_t> dims) : TensorIndex(std::vector<std::size_t>(dims)) {}

TensorIndex::TensorIndex(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("TensorIndex needs at least one factor");
  for (auto d : dims_) {
    if (d == 0) throw ShapeError("TensorIndex factor dimensions must be positive");
  }
}

std::size_t TensorIndex::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= rel_tol * (1.0 + max_abs(m));
}

CMatrix require_hermitian(const CMatrix& m, const char* what) {
  require_square(m, what);
  if (!is_hermitian(m, kHermitianTol)) {
    throw SymmetryError(std::string(what) + " is not Hermitian within tolerance");
  }
  return (m + m.adjoint()) / 2.0;
}

HermitianEig hermitian_eig(const CMatrix& m) {
  const CMatrix h = require_hermitian(m, "hermitian_eig input");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix h = require_hermitian(m, "hermitian_eigenvalues input");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigendecomposition did not converge");
  return solver.eigenvalues();
}

double schatten_norm(const CMatrix& m, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten norm requires p >= 1");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return norm_from_values(svd.singularValues(), p);
}

double hermitian_schatten_norm(const CMatrix& m, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten norm requires p >= 1");
  return norm_from_values(hermitian_eigenvalues(m), p);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const TensorIndex& idx, Keep keep) {
  require_square(m, "partial_trace input");
  if (idx.size() != 2) throw ShapeError("partial_trace expects a bipartite TensorIndex");
  const auto dl = static_cast<Eigen::Index>(idx.factor(0));
  const auto dr = static_cast<Eigen::Index>(idx.factor(1));
  if (dl * dr != m.rows()) {
    throw ShapeError("partial_trace: factor dims " + std::to_string(dl) + "x" + std::to_string(dr) +
                     " do not match matrix dimension " + std::to_string(m.rows()));
  }
  if (keep == Keep::kLeft) {
    CMatrix out = CMatrix::Zero(dl, dl);
    for (Eigen::Index i = 0; i < dl; ++i)
      for (Eigen::Index j = 0; j < dl; ++j) out(i, j) = m.block(i * dr, j * dr, dr, dr).trace();
    return out;
  }
  CMatrix out = CMatrix::Zero(dr, dr);
  for (Eigen::Index i = 0; i < dl; ++i) out += m.block(i * dr, i * dr, dr, dr);
  return out;
}

double clip_eigenvalue(double lambda) { return (lambda < 0.0 && lambda >= -kClip) ? 0.0 : lambda; }

CMatrix inv_sqrt_psd(const CMatrix& s, double floor) {
  const auto eig = hermitian_eig(s);
  const double smallest = eig.eigenvalues.size() ? eig.eigenvalues[0] : 0.0;
  if (!(smallest > floor)) {
    throw SingularityError("inv_sqrt_psd: smallest eigenvalue " + std::to_string(smallest) +
                           " is not above floor " + std::to_string(floor));
  }
  const RVector scale = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  return eig.eigenvectors * scale.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix sqrt_psd(const CMatrix& s) {
  const auto eig = hermitian_eig(s);
  RVector root(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    const double l = clip_eigenvalue(eig.eigenvalues[i]);
    if (l < 0.0) throw DomainError("sqrt_psd: matrix is not positive semidefinite");
    root[i] = std::sqrt(l);
  }
  return eig.eigenvectors * root.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

std::size_t numerical_rank(const CMatrix& m, double rel_tol) {
  const RVector ev = hermitian_eigenvalues(m);
  if (ev.size() == 0) return 0;
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return 0;
  const double cut = rel_tol * top;
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [cut](double l) { return l > cut; }));
}

}  // namespace chancomp
