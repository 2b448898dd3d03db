#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "chancomp/linalg.hpp"

namespace chancomp {

/// How close sum_i K_i^dagger K_i is to the identity.
struct TpStatus {
  enum class Kind { kExact, kApproximate, kNonTp };
  Kind kind = Kind::kNonTp;
  double defect = 0.0;  // || sum K^dagger K - 1 ||_inf

  bool exact() const { return kind == Kind::kExact; }
  static TpStatus from_defect(double defect);
};

inline constexpr double kTpExactTol = 1e-10;

/// A completely positive map in Kraus form. Immutable once built.
class Channel {
 public:
  /// Throws ShapeError on an empty list or non-uniform shapes.
  static Channel from_kraus(std::vector<CMatrix> kraus);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  std::size_t kraus_count() const { return kraus_.size(); }
  const TpStatus& tp() const { return tp_; }

  /// sum_i K_i^dagger K_i.
  CMatrix kraus_gram() const;

 private:
  Channel(std::size_t in, std::size_t out, std::vector<CMatrix> kraus);

  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  std::vector<CMatrix> kraus_;
  TpStatus tp_;
};

struct StinespringIsometry {
  CMatrix matrix;  // (dim_out * dim_env) x dim_in, output factor slow
  std::size_t dim_out = 0;
  std::size_t dim_env = 0;
};

/// Trace-one Choi state tau = (1/|A|) sum_{jk} |j><k| (x) N(|j><k|) on A (x) B.
struct ChoiMatrix {
  CMatrix matrix;
  TensorIndex dims{1, 1};
};

/// Validated density operator check: Hermitian, PSD within 1e-10, trace 1 within 1e-10.
void require_state(const CMatrix& rho, const char* what = "state");

/// sum_i K_i rho K_i^dagger for a density operator rho (validated).
CMatrix apply(const Channel& ch, const CMatrix& rho);

/// sum_i K_i X K_i^dagger for an arbitrary operator X (no state validation).
CMatrix apply_operator(const Channel& ch, const CMatrix& x);

/// Output of a pure input |psi><psi|; skips validation, psi need not be normalized.
CMatrix apply_pure(const Channel& ch, const CVector& psi);

ChoiMatrix to_choi(const Channel& ch);

/// Kraus operators from the eigendecomposition of a Choi state. Eigenvalues
/// below rel_tol * max are dropped (ties kept); eigenvalues below -1e-8
/// signal a non-CP input.
Channel kraus_from_choi(const ChoiMatrix& tau, double rel_tol = 1e-10);

StinespringIsometry stinespring(const Channel& ch);

/// Adjoint map with respect to the trace inner product; Kraus operators K_i^dagger.
Channel dual(const Channel& ch);

std::size_t kraus_rank(const Channel& ch, double rel_tol = 1e-10);

/// (N (x) Id_C)(rho_AC) with A slow, C fast.
CMatrix apply_extended(const Channel& ch, const CMatrix& rho_ac, std::size_t dim_c);

/// Channel with every Kraus operator multiplied by `factor`.
Channel scaled(const Channel& ch, double factor);

/// Convex combination w * a + (1 - w) * b, realised on the union of Kraus sets.
Channel mix(const Channel& a, const Channel& b, double w);

nlohmann::json to_json(const Channel& ch);
Channel channel_from_json(const nlohmann::json& j);

}  // namespace chancomp
