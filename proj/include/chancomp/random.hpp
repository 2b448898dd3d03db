#pragma once

// Counter-based pseudo-random streams. Every draw is a pure function of
// (key, counter), so a substream can be reconstructed from its seed and index
// alone, independent of the order in which other streams were consumed.

#include <cstddef>
#include <cstdint>

#include "chancomp/linalg.hpp"

namespace chancomp {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Key of the substream `index` under `seed`.
std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  /// Substream `index` of `seed`.
  CounterRng(std::uint64_t seed, std::uint64_t index) : key_(substream_key(seed, index)) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer in [0, bound).
  std::size_t below(std::size_t bound);
  /// Standard real normal via Box-Muller (consumes two uniforms).
  double normal();
  /// Standard complex normal, E|z|^2 = 1 (consumes two uniforms).
  Complex complex_normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniformly distributed unit vector in C^dim.
CVector haar_vector(CounterRng& rng, std::size_t dim);

/// Matrix of i.i.d. standard complex normals.
CMatrix gaussian_matrix(CounterRng& rng, std::size_t rows, std::size_t cols);

/// Random density matrix of the given rank (induced measure).
CMatrix random_density(CounterRng& rng, std::size_t dim, std::size_t rank);

}  // namespace chancomp
