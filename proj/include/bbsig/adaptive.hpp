#pragma once

#include <cstdint>
#include <vector>

#include "bbsig/dataset.hpp"
#include "bbsig/learner.hpp"

namespace bbsig {

struct TuneGrid {
    std::vector<double> zetas{0.2, 0.4, 0.6, 0.8};        // ascending, in (0,1)
    std::vector<double> rhos{0.01, 0.05, 0.1, 0.5, 1.0};  // ascending, > 0; one-split only
    int T = 100;                                          // permutation count
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

struct TuneResult {
    double zeta_hat = 0.0;
    double rho_hat = 0.0;  // 0 for the two-split test
    double estimated_type1 = 0.0;
    int evaluations = 0;    // (zeta, rho) cells visited
    bool controlled = false;  // false when no grid cell reached alpha
};

// Estimated Type I error at one (zeta, rho) cell: split, permute the
// estimation sample's S block once, fit (f, g) on it, then evaluate the
// statistic on T independently permuted inference samples and return the
// fraction with p <= alpha.
double estimate_type1(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                      const Loss& loss, double zeta, double rho, int T, double alpha,
                      std::uint64_t seed, double mask_value = 0.0);

// Same construction for the two-split statistic; no perturbation.
double estimate_type1_two_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                                const Loss& loss, double zeta, int T, double alpha,
                                std::uint64_t seed, double mask_value = 0.0);

// Walks zeta ascending (outer) and rho ascending (inner); returns the first
// cell whose estimated Type I error is <= alpha. If none qualifies, returns
// the argmin cell with controlled = false. One estimation fit per zeta,
// reused across the rho grid and the T permutations.
TuneResult tune_one_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                          const Loss& loss, const TuneGrid& grid, double mask_value = 0.0);

TuneResult tune_two_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                          const Loss& loss, const TuneGrid& grid, double mask_value = 0.0);

}  // namespace bbsig
