#pragma once

#include "lowrank/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace lowrank {

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed`
/// (splitmix64 of the pair), so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Complex random_complex(Rng& rng);
ComplexVector random_complex_vector(Eigen::Index n, Rng& rng);
/// Entries with independent standard complex Gaussian parts.
ComplexMatrix random_ginibre(Eigen::Index n, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);

/// n sorted reals with gaps bounded below by `min_gap` times the spread.
std::vector<double> random_distinct_reals(std::size_t n, Rng& rng, double min_gap = 1e-3);

/// alphas, betas sorted and strictly alternating; which set starts is random.
struct InterlacingPair {
  std::vector<double> alphas;
  std::vector<double> betas;
};
InterlacingPair random_interlacing_pair(std::size_t n, Rng& rng);

/// U D1 U^*, U D2 U^* with D1, D2 diagonal and differing in exactly k
/// positions, so both are normal, they commute, and rank(A - B) <= k. With
/// `grid` the diagonals take small Gaussian-integer values, which produces
/// repeated eigenvalues and coincidences between the two spectra.
struct NormalPair {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexVector da;
  ComplexVector db;
};
NormalPair random_commuting_normal_pair(Eigen::Index n, int k, bool grid, Rng& rng);

}  // namespace lowrank
