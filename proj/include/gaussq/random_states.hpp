#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gaussq/fock.hpp"

namespace gaussq {

/// Haar-random unitary of size n (QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q).
Eigen::MatrixXcd haar_unitary(std::mt19937_64& rng, int n);

/// Random density matrix on a product of truncated modes: Dirichlet(1)
/// weights on a random subset of basis states, then `rotations` Haar
/// rotations, each on a random set of 2 to 4 basis states. Exactly supported
/// inside the cutoff (tail 0).
TruncatedState random_fock_state(std::mt19937_64& rng, const std::vector<int>& dims, int rotations = 4);

/// Independent generator for item `index` of a seeded batch, so batches give
/// the same states whatever order or thread they are drawn on.
std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index);

}  // namespace gaussq
