#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bbsig/types.hpp"

namespace bbsig {

// One splitmix64 step; advances state and returns the next value.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives an independent stream seed from (seed, a, b). Used everywhere a
// child computation needs its own reproducible stream: repetitions,
// permutations, the two fits of a pair, perturbation noise.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

std::mt19937_64 make_engine(std::uint64_t seed);

// Fisher-Yates permutation of {0, ..., n-1}.
std::vector<Index> random_permutation(Index n, std::uint64_t seed);

// n iid N(0,1) draws.
Vector gaussian_vector(Index n, std::uint64_t seed);

}  // namespace bbsig
