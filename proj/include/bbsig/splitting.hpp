#pragma once

#include <cstdint>
#include <utility>

#include "bbsig/dataset.hpp"

namespace bbsig {

// Deterministic partition of a dataset into estimation (n rows) and
// inference (m rows) samples.
struct SplitPlan {
    Index n = 0;
    Index m = 0;
    std::uint64_t seed = 0;
};

// Log-ratio splitting rule: x0 solves
//   x + [N0 / (2 log(N0/2))] * log(x) = N
// (monotone bisection, residual <= 1e-9); n = ceil(x0), m = N - n.
// Requires N >= N0 >= 4; throws SampleTooSmall otherwise.
std::pair<Index, Index> log_ratio_sizes(Index N, Index N0);

// Shuffles rows by a seeded permutation; the last m shuffled rows form the
// inference sample. 2 <= m <= N-1; throws InvalidSplit otherwise.
std::pair<Dataset, Dataset> random_split(const Dataset& data, Index m, std::uint64_t seed);

// Applies one seeded row permutation jointly to all S columns; other columns
// and outcomes are untouched.
Dataset permute_feature_block(const Dataset& data, const FeatureSet& s, std::uint64_t seed);

}  // namespace bbsig
