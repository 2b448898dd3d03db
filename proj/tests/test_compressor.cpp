#include <doctest.h>

#include <cmath>

#include "chancomp/compressor.hpp"
#include "chancomp/errors.hpp"
#include "chancomp/zoo.hpp"
#include "test_support.hpp"

using namespace chancomp;
using namespace chancomp::testing;

TEST_CASE("sampler names round trip") {
  for (auto s : {Sampler::kHaar, Sampler::kBasis, Sampler::kBasisExhaustive}) {
    CHECK(sampler_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(sampler_from_string("gaussian"), ParseError);
}

TEST_CASE("env samplers produce unit vectors of the right kind") {
  CounterRng rng(3, 0);
  for (std::size_t i = 0; i < 20; ++i) {
    const CVector h = sample_env_vector(Sampler::kHaar, 6, rng, i);
    CHECK(h.size() == 6);
    CHECK(std::abs(h.norm() - 1.0) <= 1e-13);
    const CVector b = sample_env_vector(Sampler::kBasis, 6, rng, i);
    CHECK(b.cwiseAbs().maxCoeff() == 1.0);
    CHECK(b.cwiseAbs().sum() == 1.0);
    const CVector e = sample_env_vector(Sampler::kBasisExhaustive, 6, rng, i);
    CHECK(e == CVector::Unit(6, static_cast<Eigen::Index>(i % 6)));
  }
}

TEST_CASE("slice_kraus matches the environment contraction") {
  const auto ch = random_channel(3, 2, 4, 5);
  const auto v = stinespring(ch);
  const CVector phi = random_pure(1, 4);
  CMatrix expect = CMatrix::Zero(2, 3);
  for (std::size_t e = 0; e < 4; ++e) expect += std::conj(phi[static_cast<Eigen::Index>(e)]) * ch.kraus()[e];
  expect *= 2.0;
  CHECK(max_diff(slice_kraus(v, phi), expect) <= 1e-13);
  CHECK(slice_map(v, phi).kraus_count() == 1);
}

TEST_CASE("exhaustive basis slicing reproduces the channel exactly") {
  const auto ch = random_channel(3, 3, 5, 2);
  const auto res = compress(ch, {10, Sampler::kBasisExhaustive, 0, std::nullopt});
  CHECK(res.env_dim == 5);
  CHECK(res.tp_defect <= 1e-12);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CMatrix rho = random_state(s, 3);
    CHECK(max_diff(chancomp::apply(res.sliced, rho), chancomp::apply(ch, rho)) <= 1e-12);
  }
}

TEST_CASE("compress is deterministic in the seed") {
  const auto ch = randomizing_channel(3);
  const auto a = compress(ch, {8, Sampler::kHaar, 42, std::nullopt});
  const auto b = compress(ch, {8, Sampler::kHaar, 42, std::nullopt});
  const auto c = compress(ch, {8, Sampler::kHaar, 43, std::nullopt});
  REQUIRE(a.sliced.kraus_count() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(a.sliced.kraus()[i] == b.sliced.kraus()[i]);
  CHECK(max_diff(a.sliced.kraus()[0], c.sliced.kraus()[0]) > 1e-6);
  // The first slices do not depend on how many follow.
  const auto longer = compress(ch, {16, Sampler::kHaar, 42, std::nullopt});
  for (std::size_t i = 0; i < 8; ++i) CHECK(a.phis[i] == longer.phis[i]);
}

TEST_CASE("tp_defect and witness agree with a direct Kraus sum") {
  const auto ch = randomizing_channel(4);
  const auto res = compress(ch, {64, Sampler::kHaar, 7, std::nullopt});
  CMatrix s = CMatrix::Zero(4, 4);
  for (const auto& k : res.sliced.kraus()) s += k.adjoint() * k;
  CHECK(max_diff(s, res.witness_s) <= 1e-12);
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(s).eigenvalues();
  const double defect = std::max(std::abs(ev[0] - 1.0), std::abs(ev[3] - 1.0));
  CHECK(res.tp_defect == doctest::Approx(defect).epsilon(1e-10));
  CHECK(res.large_defect_warning == (res.tp_defect >= 0.5));
}

TEST_CASE("tp_correct yields an exactly trace-preserving map") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto res = compress(randomizing_channel(4), {128, Sampler::kHaar, seed, std::nullopt});
    REQUIRE(res.tp_defect < 1.0);
    const auto fixed = tp_correct(res);
    CMatrix s = CMatrix::Zero(4, 4);
    for (const auto& k : fixed.kraus()) s += k.adjoint() * k;
    CHECK(max_diff(s, CMatrix::Identity(4, 4)) <= 1e-10);
    REQUIRE(res.corrected.has_value());
    CHECK(max_diff(res.corrected->kraus()[0], fixed.kraus()[0]) <= 1e-14);
  }
  // One slice of a large environment leaves a rank-deficient S.
  const auto bad = compress(randomizing_channel(3), {1, Sampler::kHaar, 0, std::nullopt});
  CHECK(bad.tp_defect >= 1.0);
  CHECK_FALSE(bad.corrected.has_value());
  CHECK_THROWS_AS(tp_correct(bad), SingularityError);
}

TEST_CASE("compression result JSON carries the plan") {
  const auto res = compress(randomizing_channel(2), {4, Sampler::kBasis, 9, 0.1});
  const auto j = to_json(res);
  CHECK(j.at("plan").at("n").get<std::size_t>() == 4);
  CHECK(j.at("plan").at("sampler").get<std::string>() == "basis");
  CHECK(j.at("plan").at("seed").get<std::uint64_t>() == 9);
  CHECK(j.at("witness").at("tp_defect").get<double>() == res.tp_defect);
}

TEST_CASE("slice mean estimate is consistent with the channel") {
  const auto ch = random_channel(3, 3, 6, 1);
  const auto est = estimate_slice_mean(ch, random_state(2, 3), 4000, 11);
  CHECK(est.samples == 4000);
  CHECK(est.max_z_score() <= 5.0);
  const auto basis = estimate_slice_mean(ch, random_state(2, 3), 4000, 11, Sampler::kBasis);
  CHECK(basis.max_z_score() <= 5.0);
}

TEST_CASE("psi1 moment oracle: mean matches the trace formula") {
  const std::size_t d = 2, s = 4;
  const CMatrix sigma = random_state(3, d * s);
  const CVector y = random_pure(4, d);
  const auto est = psi1_moment_oracle(sigma, y, 1.0, 20000, 5);
  // E tr[(y (x) phi) sigma] over Haar phi = (1/s) tr[(y (x) 1) sigma] = bound.
  CHECK(std::abs(est.mean - est.bound) <= 5.0 * est.mean_stderr + 1e-12);
  CHECK(est.normalized_moment <= 1.05 * est.bound);
  CHECK_THROWS_AS(psi1_moment_oracle(sigma, y, 1.0, 10, 5), DomainError);
}

TEST_CASE("tail probability oracle is a frequency") {
  const auto ch = randomizing_channel(3);
  const CVector x = CVector::Unit(3, 0), y = CVector::Unit(3, 1);
  const double loose = tail_probability_oracle(ch, x, y, 64, 2.0, 200, 1);
  const double tight = tail_probability_oracle(ch, x, y, 64, 0.05, 200, 1);
  CHECK(loose >= 0.0);
  CHECK(tight <= 1.0);
  CHECK(loose <= tight);
}
