#pragma once

#include <cstdint>
#include <random>

#include "orthoscalar/numeric.hpp"

namespace orthoscalar {

/// The single source of randomness. Every randomized operation takes a seed
/// or a generator explicitly.
using Rng = std::mt19937_64;

/// Independent standard complex Gaussian entries (E|z|^2 = 1).
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
Matrix random_unitary(Eigen::Index n, Rng& rng);

double random_normal(Rng& rng);

}  // namespace orthoscalar
