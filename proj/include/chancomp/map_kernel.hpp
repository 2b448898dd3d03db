#pragma once

// Hermiticity-preserving linear map held as its unnormalized Choi matrix
// J = sum_i vec(K_i) vec(K_i)^dagger (A slow, B fast). Evaluation cost depends
// on |A||B| only, not on the Kraus count, which is what makes optimizing over
// inputs of a heavily sliced map affordable. Differences of CP maps are
// representable as well.

#include <cstddef>

#include "chancomp/channel.hpp"
#include "chancomp/linalg.hpp"

namespace chancomp {

class MapKernel {
 public:
  explicit MapKernel(const Channel& ch);
  MapKernel(CMatrix choi_unnormalized, std::size_t dim_in, std::size_t dim_out);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const CMatrix& matrix() const { return j_; }

  /// Image of an arbitrary operator X on A.
  CMatrix apply(const CMatrix& x) const;
  /// Image of |psi><psi|.
  CMatrix apply_pure(const CVector& psi) const;
  /// Adjoint map applied to Y on B.
  CMatrix dual(const CMatrix& y) const;

  MapKernel operator-(const MapKernel& other) const;
  MapKernel operator+(const MapKernel& other) const;
  MapKernel operator*(double s) const;

 private:
  CMatrix j_;
  std::size_t dim_in_;
  std::size_t dim_out_;
};

}  // namespace chancomp
