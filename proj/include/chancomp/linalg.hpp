#pragma once

// Dense complex matrix kernels. Storage is Eigen's; the tensor convention is
// fixed library-wide: for a product space X (x) Y the left factor X is the
// slow index, i.e. basis vector |x>|y> sits at position x * dim(Y) + y.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace chancomp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Ordered factor dimensions of a tensor product space (left factor slow).
class TensorIndex {
 public:
  TensorIndex(std::initializer_list<std::size_t> dims);
  explicit TensorIndex(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& factor_dims() const { return dims_; }
  std::size_t factor(std::size_t i) const { return dims_.at(i); }
  std::size_t size() const { return dims_.size(); }
  std::size_t total() const;

 private:
  std::vector<std::size_t> dims_;
};

enum class Keep { kLeft, kRight };

struct HermitianEig {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // columns, unitary
};

/// Hermitian-symmetrized copy; throws SymmetryError beyond tolerance.
CMatrix require_hermitian(const CMatrix& m, const char* what = "matrix");

bool is_hermitian(const CMatrix& m, double rel_tol = 1e-12);

/// M = U diag(lambda) U^dagger with ascending lambda.
HermitianEig hermitian_eig(const CMatrix& m);

/// Eigenvalues only, ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

/// (sum sigma_i^p)^(1/p); p = kInfinity gives the largest singular value.
double schatten_norm(const CMatrix& m, double p);

/// Schatten norm of a Hermitian matrix computed from its eigenvalues.
double hermitian_schatten_norm(const CMatrix& m, double p);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Partial trace over a bipartite space, keeping one of the two factors.
CMatrix partial_trace(const CMatrix& m, const TensorIndex& idx, Keep keep);

/// S^{-1/2} for Hermitian PSD S whose spectrum lies strictly above floor.
CMatrix inv_sqrt_psd(const CMatrix& s, double floor = 0.0);

/// Principal square root of a PSD matrix; eigenvalues in [-1e-12, 0] clipped.
CMatrix sqrt_psd(const CMatrix& s);

/// Number of eigenvalues strictly above rel_tol * max eigenvalue.
std::size_t numerical_rank(const CMatrix& m, double rel_tol = 1e-10);

/// Clips eigenvalues in [-1e-12, 0] to zero; leaves larger negatives alone.
double clip_eigenvalue(double lambda);

/// Largest entry modulus.
double max_abs(const CMatrix& m);

}  // namespace chancomp
