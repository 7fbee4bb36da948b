#pragma once

#include <cstdint>
#include <vector>

#include "bbsig/dataset.hpp"
#include "bbsig/learner.hpp"

namespace bbsig {

// p_hat = (|{s_t <= s_0}| + 1) / (T + 1).
double permutation_pvalue(double s0, const std::vector<double>& permuted_scores);

// Row assignment of a k-fold partition; every row lands in exactly one fold.
std::vector<std::vector<Index>> cv_folds(Index n, int folds, std::uint64_t seed);

// Mean holdout loss over `folds` folds, refitting per fold.
double cross_val_score(const Dataset& data, const LearnerSpec& spec, const Loss& loss, int folds,
                       std::uint64_t seed);

// Permutation test: s_0 from cross-validation on the original data, s_t from
// cross-validation on data with the S block jointly permuted (model refit
// every time).
double permutation_test(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                        const Loss& loss, int T, int folds, std::uint64_t seed, int threads = 1);

// Holdout variant: one split (inference fraction zeta), one fit on training;
// scores are holdout losses with the holdout's S block permuted, no refits.
double holdout_permutation_test(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                                const Loss& loss, double zeta, int T, std::uint64_t seed);

}  // namespace bbsig
