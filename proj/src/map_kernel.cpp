#include "chancomp/map_kernel.hpp"

#include "chancomp/errors.hpp"

namespace chancomp {

MapKernel::MapKernel(const Channel& ch)
    : j_(to_choi(ch).matrix * static_cast<double>(ch.dim_in())), dim_in_(ch.dim_in()), dim_out_(ch.dim_out()) {}

MapKernel::MapKernel(CMatrix choi_unnormalized, std::size_t dim_in, std::size_t dim_out)
    : j_(std::move(choi_unnormalized)), dim_in_(dim_in), dim_out_(dim_out) {
  const auto n = static_cast<Eigen::Index>(dim_in * dim_out);
  if (j_.rows() != n || j_.cols() != n) throw ShapeError("MapKernel: Choi matrix shape does not match dims");
}

// N(X) = sum_{jk} X_jk J[(j,.),(k,.)]
CMatrix MapKernel::apply(const CMatrix& x) const {
  const auto da = static_cast<Eigen::Index>(dim_in_);
  const auto db = static_cast<Eigen::Index>(dim_out_);
  if (x.rows() != da || x.cols() != da) throw ShapeError("MapKernel::apply: input dimension mismatch");
  CMatrix out = CMatrix::Zero(db, db);
  for (Eigen::Index j = 0; j < da; ++j)
    for (Eigen::Index k = 0; k < da; ++k) {
      const Complex c = x(j, k);
      if (c != Complex(0.0, 0.0)) out.noalias() += c * j_.block(j * db, k * db, db, db);
    }
  return out;
}

CMatrix MapKernel::apply_pure(const CVector& psi) const {
  const auto da = static_cast<Eigen::Index>(dim_in_);
  const auto db = static_cast<Eigen::Index>(dim_out_);
  if (psi.size() != da) throw ShapeError("MapKernel::apply_pure: vector dimension mismatch");
  // out[b,b'] = sum_{jk} psi_j conj(psi_k) J[(j,b),(k,b')]  =  P^T J conj(P) with P = psi (x) 1_B.
  CMatrix left(db, da * db);  // row b: sum_j psi_j J[(j,b), :]
  left.setZero();
  for (Eigen::Index j = 0; j < da; ++j) left.noalias() += psi[j] * j_.middleRows(j * db, db);
  CMatrix out = CMatrix::Zero(db, db);
  for (Eigen::Index k = 0; k < da; ++k) out.noalias() += std::conj(psi[k]) * left.middleCols(k * db, db);
  return out;
}

// N*(Y)_{kj} = tr(Y J[(j,.),(k,.)])
CMatrix MapKernel::dual(const CMatrix& y) const {
  const auto da = static_cast<Eigen::Index>(dim_in_);
  const auto db = static_cast<Eigen::Index>(dim_out_);
  if (y.rows() != db || y.cols() != db) throw ShapeError("MapKernel::dual: input dimension mismatch");
  CMatrix out(da, da);
  for (Eigen::Index j = 0; j < da; ++j)
    for (Eigen::Index k = 0; k < da; ++k) out(k, j) = (y.cwiseProduct(j_.block(j * db, k * db, db, db).transpose())).sum();
  return out;
}

MapKernel MapKernel::operator-(const MapKernel& other) const {
  if (dim_in_ != other.dim_in_ || dim_out_ != other.dim_out_) throw ShapeError("MapKernel: dimension mismatch");
  return MapKernel(j_ - other.j_, dim_in_, dim_out_);
}

MapKernel MapKernel::operator+(const MapKernel& other) const {
  if (dim_in_ != other.dim_in_ || dim_out_ != other.dim_out_) throw ShapeError("MapKernel: dimension mismatch");
  return MapKernel(j_ + other.j_, dim_in_, dim_out_);
}

MapKernel MapKernel::operator*(double s) const { return MapKernel(j_ * s, dim_in_, dim_out_); }

}  // namespace chancomp
