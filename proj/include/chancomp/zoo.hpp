#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chancomp/channel.hpp"

namespace chancomp {

/// Tight normalized frame: count unit vectors in C^dim averaging to 1/dim.
struct Frame {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<CVector> vectors;

  /// (1/N) sum_k psi_k psi_k^dagger.
  CMatrix frame_operator() const;
};

/// Fourier-phase frame psi_k = d^{-1/2} sum_{j=1}^{d} exp(2 pi i j k / N) |j>,
/// k = 1..N, with |j> stored at index j - 1. Requires count >= dim >= 1.
Frame tight_frame(std::size_t count, std::size_t dim);

/// Measurement channel X -> (|A|/|B|) sum_i <psi_i|X|psi_i> |x_i><x_i| over the (|B|, |A|) frame.
Channel qc_channel(std::size_t dim_in, std::size_t dim_out);

/// Preparation channel X -> sum_i <x_i|X|x_i> |psi_i><psi_i| over the (|A|, |B|) frame.
Channel cq_channel(std::size_t dim_in, std::size_t dim_out);

/// Generalized Pauli shift X|j> = |j+1 mod d> and clock Z|j> = exp(2 pi i j / d)|j>.
CMatrix pauli_shift(std::size_t dim);
CMatrix pauli_clock(std::size_t dim);

/// Kraus set {X^j Z^k / d}: every input goes to 1/d.
Channel randomizing_channel(std::size_t dim);

/// W(X) = [(tr X) 1 + (2 lambda - 1) X^T] / (d + 2 lambda - 1), Kraus set extracted from its Choi state.
Channel werner_channel(std::size_t dim, double lambda);

/// Closed form of the Werner map, used as an independent reference.
CMatrix werner_formula(const CMatrix& x, double lambda);

/// X -> (tr X) sigma for a fixed output state sigma.
Channel forgetful_channel(std::size_t dim_in, const CMatrix& sigma);

/// Environment slices of a seeded Haar isometry C^dim_in -> C^dim_out (x) C^dim_env.
Channel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env, std::uint64_t seed);

/// Conjugation by a fixed unitary.
Channel unitary_channel(const CMatrix& u);

Channel identity_channel(std::size_t dim);

}  // namespace chancomp
