#include <doctest.h>

#include <cmath>

#include "chancomp/errors.hpp"
#include "chancomp/zoo.hpp"
#include "test_support.hpp"

using namespace chancomp;
using namespace chancomp::testing;

TEST_CASE("tight_frame is normalized and tight") {
  const std::pair<std::size_t, std::size_t> shapes[] = {{4, 4}, {16, 4}, {37, 5}, {1, 1}, {9, 2}};
  for (auto [n, d] : shapes) {
    const auto f = tight_frame(n, d);
    REQUIRE(f.vectors.size() == n);
    for (const auto& v : f.vectors) CHECK(std::abs(v.norm() - 1.0) <= 1e-14);
    CMatrix acc = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& v : f.vectors) acc += v * v.adjoint();
    acc /= static_cast<double>(n);
    CHECK(max_diff(acc, CMatrix::Identity(acc.rows(), acc.cols()) / static_cast<double>(d)) <= 1e-13);
    CHECK(max_diff(f.frame_operator(), acc) <= 1e-14);
  }
  CHECK_THROWS_AS(tight_frame(3, 4), DomainError);
  CHECK_THROWS_AS(tight_frame(0, 0), DomainError);
}

TEST_CASE("tight_frame with count == dim is an orthonormal basis") {
  const auto f = tight_frame(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const Complex ip = f.vectors[i].dot(f.vectors[j]);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-13);
    }
}

TEST_CASE("q-c channel is trace preserving and maps e_0 to the maximally mixed state") {
  const auto m = qc_channel(16, 16);
  CHECK(m.tp().exact());
  CHECK(m.kraus_count() == 16);
  CHECK(max_diff(chancomp::apply(m, projector(CVector::Unit(16, 0))), CMatrix::Identity(16, 16) / 16.0) <= 1e-12);

  const auto m2 = qc_channel(4, 8);
  CHECK(m2.tp().exact());
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CMatrix out = chancomp::apply(m2, random_state(s, 4));
    CHECK(std::abs(out.trace().real() - 1.0) <= 1e-12);
    // Output is diagonal in the computational basis.
    CMatrix off = out;
    off.diagonal().setZero();
    CHECK(max_abs(off) <= 1e-14);
  }
}

TEST_CASE("c-q channel prepares frame vectors") {
  const auto n = cq_channel(8, 4);
  CHECK(n.tp().exact());
  const auto f = tight_frame(8, 4);
  for (std::size_t i = 0; i < 8; ++i) {
    const CMatrix out = chancomp::apply(n, projector(CVector::Unit(8, static_cast<Eigen::Index>(i))));
    CHECK(max_diff(out, projector(f.vectors[i])) <= 1e-13);
  }
}

TEST_CASE("Pauli clock and shift commute up to a phase") {
  for (std::size_t d : {2u, 3u, 5u}) {
    const CMatrix x = pauli_shift(d), z = pauli_clock(d);
    const Complex w = std::polar(1.0, 2.0 * M_PI / static_cast<double>(d));
    CHECK(max_diff(z * x, w * x * z) <= 1e-13);
    CHECK(max_diff(x.adjoint() * x, CMatrix::Identity(x.rows(), x.cols())) <= 1e-14);
    CHECK(max_diff(z.adjoint() * z, CMatrix::Identity(z.rows(), z.cols())) <= 1e-14);
  }
}

TEST_CASE("randomizing channel has the maximally mixed Choi state") {
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto r = randomizing_channel(d);
    CHECK(r.kraus_count() == d * d);
    CHECK(r.tp().exact());
    const double dd = static_cast<double>(d * d);
    CHECK(max_diff(to_choi(r).matrix, CMatrix::Identity(r.kraus_count(), r.kraus_count()) / dd) <= 1e-12);
    CHECK(max_diff(choi_by_definition(r), CMatrix::Identity(r.kraus_count(), r.kraus_count()) / dd) <= 1e-12);
  }
}

TEST_CASE("werner channel agrees with its closed form") {
  for (std::size_t d : {2u, 3u, 4u}) {
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto w = werner_channel(d, lambda);
      CHECK(w.tp().defect <= 1e-10);
      for (std::uint64_t s = 0; s < 5; ++s) {
        const CMatrix x = random_matrix(s, d, d);
        CHECK(max_diff(apply_operator(w, x), werner_formula(x, lambda)) <= 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(werner_channel(1, 0.5), DomainError);
  CHECK_THROWS_AS(werner_channel(3, 1.5), DomainError);
}

TEST_CASE("werner Choi state has the expected symmetric weight and rank") {
  for (std::size_t d : {3u, 4u}) {
    const double dd = static_cast<double>(d);
    const CMatrix one = CMatrix::Identity(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    const CMatrix f = swap_operator(d);
    const CMatrix sym = (one + f) / (dd * (dd + 1.0));
    const CMatrix anti = (one - f) / (dd * (dd - 1.0));
    for (double lambda : {0.0, 0.3, 0.5, 0.75, 1.0}) {
      const CMatrix tau = choi_by_definition(werner_channel(d, lambda));
      const double mu = lambda * (dd + 1.0) / (dd + 2.0 * lambda - 1.0);
      CHECK(max_diff(tau, mu * sym + (1.0 - mu) * anti) <= 1e-12);
    }
    CHECK(numerical_rank(to_choi(werner_channel(d, 0.5)).matrix) == d * d);
    CHECK(numerical_rank(to_choi(werner_channel(d, 1.0)).matrix) == d * (d + 1) / 2);
    CHECK(numerical_rank(to_choi(werner_channel(d, 0.0)).matrix) == d * (d - 1) / 2);
    CHECK(werner_channel(d, 1.0).kraus_count() == d * (d + 1) / 2);
  }
}

TEST_CASE("forgetful channel outputs sigma for every input") {
  const CMatrix sigma = random_state(4, 3);
  const auto ch = forgetful_channel(5, sigma);
  CHECK(ch.tp().exact());
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(max_diff(chancomp::apply(ch, random_state(s, 5)), sigma) <= 1e-13);
  CHECK_THROWS(forgetful_channel(2, sigma * 2.0));
}

TEST_CASE("random_channel is seeded, exact and trace preserving") {
  const auto a = random_channel(4, 3, 5, 17);
  const auto b = random_channel(4, 3, 5, 17);
  const auto c = random_channel(4, 3, 5, 18);
  CHECK(a.kraus_count() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.kraus()[i] == b.kraus()[i]);
  CHECK(max_diff(a.kraus()[0], c.kraus()[0]) > 1e-3);
  CHECK(a.tp().defect <= 1e-12);
  CHECK_THROWS_AS(random_channel(8, 2, 2, 0), DomainError);
}

TEST_CASE("unitary and identity channels") {
  const auto u = hermitian_eig(random_hermitian(5, 3)).eigenvectors;
  const auto ch = unitary_channel(u);
  CHECK(ch.tp().defect <= 1e-12);
  const CMatrix rho = random_state(1, 3);
  CHECK(max_diff(chancomp::apply(ch, rho), u * rho * u.adjoint()) <= 1e-13);
  CHECK(identity_channel(4).kraus_count() == 1);
}
