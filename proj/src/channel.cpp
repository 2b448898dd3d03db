#include "chancomp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chancomp/errors.hpp"

namespace chancomp {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kNotCpTol = 1e-8;

std::string shape_str(const CMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_dim(const CMatrix& m, std::size_t dim, const char* what) {
  if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                     ", got " + shape_str(m));
  }
}

}  // namespace

TpStatus TpStatus::from_defect(double defect) {
  TpStatus s;
  s.defect = defect;
  if (defect <= kTpExactTol) {
    s.kind = Kind::kExact;
  } else if (defect < 1.0) {
    s.kind = Kind::kApproximate;
  } else {
    s.kind = Kind::kNonTp;
  }
  return s;
}

Channel::Channel(std::size_t in, std::size_t out, std::vector<CMatrix> kraus)
    : dim_in_(in), dim_out_(out), kraus_(std::move(kraus)) {
  const CMatrix gram = kraus_gram();
  const CMatrix diff = gram - CMatrix::Identity(gram.rows(), gram.cols());
  tp_ = TpStatus::from_defect(hermitian_schatten_norm((diff + diff.adjoint()) / 2.0, kInfinity));
}

Channel Channel::from_kraus(std::vector<CMatrix> kraus) {
  if (kraus.empty()) throw ShapeError("from_kraus: empty Kraus list");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw ShapeError("from_kraus: zero-sized Kraus operator");
  for (std::size_t i = 1; i < kraus.size(); ++i) {
    if (kraus[i].rows() != rows || kraus[i].cols() != cols) {
      throw ShapeError("from_kraus: Kraus operator " + std::to_string(i) + " has shape " + shape_str(kraus[i]) +
                       ", expected " + shape_str(kraus.front()));
    }
  }
  return Channel(static_cast<std::size_t>(cols), static_cast<std::size_t>(rows), std::move(kraus));
}

CMatrix Channel::kraus_gram() const {
  const auto d = static_cast<Eigen::Index>(dim_in_);
  CMatrix gram = CMatrix::Zero(d, d);
  for (const auto& k : kraus_) gram.noalias() += k.adjoint() * k;
  return gram;
}

void require_state(const CMatrix& rho, const char* what) {
  if (rho.rows() != rho.cols()) throw ShapeError(std::string(what) + " must be square");
  if (!is_hermitian(rho, kStateTol)) throw DomainError(std::string(what) + " is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw DomainError(std::string(what) + " has trace " + std::to_string(tr) + ", expected 1");
  }
  const RVector ev = hermitian_eigenvalues((rho + rho.adjoint()) / 2.0);
  if (ev.size() && ev[0] < -kStateTol) throw DomainError(std::string(what) + " is not positive semidefinite");
}

CMatrix apply_operator(const Channel& ch, const CMatrix& x) {
  require_dim(x, ch.dim_in(), "apply: input operator");
  const auto d = static_cast<Eigen::Index>(ch.dim_out());
  CMatrix out = CMatrix::Zero(d, d);
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

CMatrix apply(const Channel& ch, const CMatrix& rho) {
  require_dim(rho, ch.dim_in(), "apply: input state");
  require_state(rho, "apply input");
  const CMatrix out = apply_operator(ch, rho);
  return (out + out.adjoint()) / 2.0;
}

CMatrix apply_pure(const Channel& ch, const CVector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(ch.dim_in())) throw ShapeError("apply_pure: vector dimension mismatch");
  const auto dout = static_cast<Eigen::Index>(ch.dim_out());
  CMatrix w(dout, static_cast<Eigen::Index>(ch.kraus_count()));
  for (std::size_t i = 0; i < ch.kraus_count(); ++i) w.col(static_cast<Eigen::Index>(i)) = ch.kraus()[i] * psi;
  return w * w.adjoint();
}

ChoiMatrix to_choi(const Channel& ch) {
  const auto da = static_cast<Eigen::Index>(ch.dim_in());
  const auto db = static_cast<Eigen::Index>(ch.dim_out());
  // Column (j, b) of the stacked vec(K_i) matrix holds K_i(b, j).
  CMatrix vecs(da * db, static_cast<Eigen::Index>(ch.kraus_count()));
  for (std::size_t i = 0; i < ch.kraus_count(); ++i) {
    const auto& k = ch.kraus()[i];
    for (Eigen::Index j = 0; j < da; ++j) vecs.block(j * db, static_cast<Eigen::Index>(i), db, 1) = k.col(j);
  }
  CMatrix tau = vecs * vecs.adjoint() / static_cast<double>(da);
  tau = (tau + tau.adjoint()) / 2.0;
  return {std::move(tau), TensorIndex{ch.dim_in(), ch.dim_out()}};
}

Channel kraus_from_choi(const ChoiMatrix& tau, double rel_tol) {
  if (tau.dims.size() != 2) throw ShapeError("kraus_from_choi: Choi dims must be bipartite [A, B]");
  const auto da = static_cast<Eigen::Index>(tau.dims.factor(0));
  const auto db = static_cast<Eigen::Index>(tau.dims.factor(1));
  if (tau.matrix.rows() != da * db || tau.matrix.cols() != da * db) {
    throw ShapeError("kraus_from_choi: matrix shape does not match dims");
  }
  // The state convention carries a 1/|A|; undo it so eigenvalues are squared Kraus norms.
  const auto eig = hermitian_eig(tau.matrix * static_cast<double>(da));
  const auto& ev = eig.eigenvalues;
  if (ev.size() == 0) throw ShapeError("kraus_from_choi: empty Choi matrix");
  if (ev[0] < -kNotCpTol) {
    throw NotCompletelyPositiveError("kraus_from_choi: Choi eigenvalue " + std::to_string(ev[0]) +
                                     " is below -1e-8");
  }
  const double cut = rel_tol * ev.maxCoeff();
  std::vector<CMatrix> kraus;
  for (Eigen::Index n = ev.size() - 1; n >= 0; --n) {
    if (!(ev[n] >= cut) || ev[n] <= 0.0) continue;
    const double amp = std::sqrt(ev[n]);
    CMatrix k(db, da);
    for (Eigen::Index j = 0; j < da; ++j) k.col(j) = amp * eig.eigenvectors.block(j * db, n, db, 1);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw NotCompletelyPositiveError("kraus_from_choi: Choi matrix has no positive eigenvalue");
  return Channel::from_kraus(std::move(kraus));
}

StinespringIsometry stinespring(const Channel& ch) {
  const auto db = static_cast<Eigen::Index>(ch.dim_out());
  const auto de = static_cast<Eigen::Index>(ch.kraus_count());
  CMatrix v(db * de, static_cast<Eigen::Index>(ch.dim_in()));
  for (Eigen::Index e = 0; e < de; ++e) {
    const auto& k = ch.kraus()[static_cast<std::size_t>(e)];
    for (Eigen::Index b = 0; b < db; ++b) v.row(b * de + e) = k.row(b);
  }
  return {std::move(v), ch.dim_out(), static_cast<std::size_t>(de)};
}

Channel dual(const Channel& ch) {
  std::vector<CMatrix> ops;
  ops.reserve(ch.kraus_count());
  for (const auto& k : ch.kraus()) ops.emplace_back(k.adjoint());
  return Channel::from_kraus(std::move(ops));
}

std::size_t kraus_rank(const Channel& ch, double rel_tol) { return numerical_rank(to_choi(ch).matrix, rel_tol); }

CMatrix apply_extended(const Channel& ch, const CMatrix& rho_ac, std::size_t dim_c) {
  const auto da = static_cast<Eigen::Index>(ch.dim_in());
  const auto db = static_cast<Eigen::Index>(ch.dim_out());
  const auto dc = static_cast<Eigen::Index>(dim_c);
  if (dc == 0 || rho_ac.rows() != da * dc || rho_ac.cols() != da * dc) {
    throw ShapeError("apply_extended: input is " + shape_str(rho_ac) + ", expected " + std::to_string(da * dc) +
                     " square");
  }
  const CMatrix id_c = CMatrix::Identity(dc, dc);
  CMatrix out = CMatrix::Zero(db * dc, db * dc);
  for (const auto& k : ch.kraus()) {
    const CMatrix kc = kron(k, id_c);
    out.noalias() += kc * rho_ac * kc.adjoint();
  }
  return out;
}

Channel scaled(const Channel& ch, double factor) {
  std::vector<CMatrix> ops;
  ops.reserve(ch.kraus_count());
  for (const auto& k : ch.kraus()) ops.emplace_back(k * factor);
  return Channel::from_kraus(std::move(ops));
}

Channel mix(const Channel& a, const Channel& b, double w) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) throw ShapeError("mix: channel dims differ");
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mix: weight outside [0, 1]");
  std::vector<CMatrix> ops;
  for (const auto& k : a.kraus()) ops.emplace_back(k * std::sqrt(w));
  for (const auto& k : b.kraus()) ops.emplace_back(k * std::sqrt(1.0 - w));
  return Channel::from_kraus(std::move(ops));
}

nlohmann::json to_json(const Channel& ch) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& k : ch.kraus()) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < k.rows(); ++r)
      for (Eigen::Index c = 0; c < k.cols(); ++c) entries.push_back({k(r, c).real(), k(r, c).imag()});
    ops.push_back(std::move(entries));
  }
  return {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(ops)}};
}

Channel channel_from_json(const nlohmann::json& j) {
  try {
    const auto din = j.at("dim_in").get<std::size_t>();
    const auto dout = j.at("dim_out").get<std::size_t>();
    std::vector<CMatrix> ops;
    for (const auto& entries : j.at("kraus")) {
      if (entries.size() != din * dout) {
        throw ParseError("channel JSON: Kraus operator has " + std::to_string(entries.size()) + " entries, expected " +
                         std::to_string(din * dout));
      }
      CMatrix k(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din));
      std::size_t n = 0;
      for (Eigen::Index r = 0; r < k.rows(); ++r)
        for (Eigen::Index c = 0; c < k.cols(); ++c, ++n) {
          const auto& z = entries.at(n);
          k(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
      ops.push_back(std::move(k));
    }
    return Channel::from_kraus(std::move(ops));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("channel JSON: ") + e.what());
  }
}

}  // namespace chancomp
