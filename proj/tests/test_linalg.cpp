#include <doctest.h>

#include <cmath>

#include "chancomp/channel.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/linalg.hpp"
#include "chancomp/zoo.hpp"
#include "test_support.hpp"

using namespace chancomp;
using namespace chancomp::testing;

TEST_CASE("hermitian_eig on small fixed matrices") {
  auto id = hermitian_eig(CMatrix::Identity(2, 2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  auto de = hermitian_eig(d);
  CHECK(de.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(de.eigenvalues[1] == doctest::Approx(3.0));

  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  auto xe = hermitian_eig(x);
  CHECK(xe.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(xe.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), ShapeError);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), SymmetryError);
}

TEST_CASE("hermitian_eig reconstructs seeded matrices up to 64x64") {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t dim = 1 + (seed * 7) % 64;
    const CMatrix m = random_hermitian(seed, dim);
    const auto e = hermitian_eig(m);
    const CMatrix rec = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    const double scale = 1.0 + e.eigenvalues.cwiseAbs().maxCoeff();
    worst = std::max(worst, max_diff(rec, m) / scale);
    for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) REQUIRE(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("schatten_norm fixed values and domain") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  CHECK(schatten_norm(d, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(schatten_norm(d, kInfinity) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(schatten_norm(d, 0.5), DomainError);
  CHECK(hermitian_schatten_norm(d, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("schatten p=2 equals the entrywise Frobenius sum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix m = random_matrix(seed, 6, 6);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < 6; ++i)
      for (Eigen::Index j = 0; j < 6; ++j) acc += std::norm(m(i, j));
    const double direct = std::sqrt(acc);
    CHECK(std::abs(schatten_norm(m, 2.0) - direct) <= 1e-12 * direct);
  }
}

TEST_CASE("schatten_norm is nonincreasing in p") {
  const double ps[] = {1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 8.0, 16.0, kInfinity};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix m = random_matrix(100 + seed, 5, 4);
    double prev = schatten_norm(m, ps[0]);
    for (std::size_t i = 1; i < std::size(ps); ++i) {
      const double cur = schatten_norm(m, ps[i]);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("partial_trace product and entangled cases") {
  const CMatrix rho = random_state(1, 3);
  const CMatrix sigma = random_state(2, 4);
  const CMatrix joint = kron(rho, sigma);
  CHECK(max_diff(partial_trace(joint, TensorIndex{3, 4}, Keep::kLeft), rho) <= 1e-13);
  CHECK(max_diff(partial_trace(joint, TensorIndex{3, 4}, Keep::kRight), sigma) <= 1e-13);

  const std::size_t d = 4;
  const CMatrix psi = projector(max_entangled(d));
  const CMatrix mixed = CMatrix::Identity(4, 4) / 4.0;
  CHECK(max_diff(partial_trace(psi, TensorIndex{d, d}, Keep::kLeft), mixed) <= 1e-13);
  CHECK(max_diff(partial_trace(psi, TensorIndex{d, d}, Keep::kRight), mixed) <= 1e-13);

  CHECK_THROWS_AS(partial_trace(joint, TensorIndex{3, 3}, Keep::kLeft), ShapeError);
}

TEST_CASE("partial_trace of the identity channel's Choi state over the output") {
  const std::size_t d = 3;
  const auto tau = to_choi(identity_channel(d));
  CHECK(max_diff(partial_trace(tau.matrix, tau.dims, Keep::kLeft), CMatrix::Identity(3, 3) / 3.0) <= 1e-13);
}

TEST_CASE("partial_trace over both factors equals the full trace") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix m = random_matrix(seed, 12, 12);
    const Complex full = m.trace();
    const Complex via_left = partial_trace(m, TensorIndex{3, 4}, Keep::kLeft).trace();
    const Complex via_right = partial_trace(m, TensorIndex{3, 4}, Keep::kRight).trace();
    CHECK(std::abs(via_left - full) <= 1e-13 * (1.0 + std::abs(full)));
    CHECK(std::abs(via_right - full) <= 1e-13 * (1.0 + std::abs(full)));
  }
}

TEST_CASE("inv_sqrt_psd fixed values") {
  CHECK(max_diff(inv_sqrt_psd(CMatrix::Identity(3, 3)), CMatrix::Identity(3, 3)) <= 1e-14);
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 0) = 4.0;
  s(1, 1) = 9.0;
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 0.5;
  expect(1, 1) = 1.0 / 3.0;
  CHECK(max_diff(inv_sqrt_psd(s), expect) <= 1e-14);

  CMatrix singular = CMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(inv_sqrt_psd(singular, 0.0), SingularityError);
  CHECK_THROWS_AS(inv_sqrt_psd(s, 5.0), SingularityError);
}

TEST_CASE("inv_sqrt_psd on seeded spectra in [0.9, 1.1]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 7;
    const auto u = hermitian_eig(random_hermitian(seed, d)).eigenvectors;
    RVector spec(static_cast<Eigen::Index>(d));
    CounterRng rng(seed, 77);
    for (auto& l : spec) l = 0.9 + 0.2 * rng.uniform();
    const CMatrix s = u * spec.cast<Complex>().asDiagonal() * u.adjoint();
    const CMatrix r = inv_sqrt_psd(s);
    CHECK(max_diff(r * s * r, CMatrix::Identity(s.rows(), s.cols())) <= 1e-12);
    CHECK(max_diff(r * s, s * r) <= 1e-10);
  }
}

TEST_CASE("numerical_rank thresholds") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-16;
  CHECK(numerical_rank(d, 1e-10) == 1);
  CHECK(numerical_rank(CMatrix::Identity(5, 5)) == 5);
  CHECK(numerical_rank(to_choi(randomizing_channel(2)).matrix) == 4);
}
