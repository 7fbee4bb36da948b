#include "bbsig/baselines.hpp"

#include <cmath>

#include "bbsig/parallel.hpp"
#include "bbsig/rng.hpp"
#include "bbsig/splitting.hpp"

namespace bbsig {

double permutation_pvalue(double s0, const std::vector<double>& permuted_scores) {
    if (permuted_scores.empty()) throw InvalidConfig("permutation test needs T >= 1");
    long count = 0;
    for (double s : permuted_scores)
        if (s <= s0) ++count;
    return static_cast<double>(count + 1) / static_cast<double>(permuted_scores.size() + 1);
}

std::vector<std::vector<Index>> cv_folds(Index n, int folds, std::uint64_t seed) {
    if (folds < 2) throw InvalidConfig("cross-validation needs folds >= 2");
    if (folds > n) throw InvalidConfig("more folds than rows");
    const auto perm = random_permutation(n, seed);
    std::vector<std::vector<Index>> out(static_cast<std::size_t>(folds));
    for (Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i % folds)].push_back(perm[static_cast<std::size_t>(i)]);
    return out;
}

namespace {

Dataset take_rows(const Dataset& data, const std::vector<Index>& rows) {
    Dataset out;
    out.column_names = data.column_names;
    out.features.resize(static_cast<Index>(rows.size()), data.dim());
    out.outcomes.resize(static_cast<Index>(rows.size()), data.outcome_dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(static_cast<Index>(i)) = data.features.row(rows[i]);
        out.outcomes.row(static_cast<Index>(i)) = data.outcomes.row(rows[i]);
    }
    return out;
}

}  // namespace

double cross_val_score(const Dataset& data, const LearnerSpec& spec, const Loss& loss, int folds,
                       std::uint64_t seed) {
    const auto assignment = cv_folds(data.rows(), folds, derive_seed(seed, 7));
    double total = 0.0;
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        std::vector<Index> train_rows;
        for (std::size_t j = 0; j < assignment.size(); ++j)
            if (j != k) train_rows.insert(train_rows.end(), assignment[j].begin(), assignment[j].end());
        const Dataset train = take_rows(data, train_rows);
        const Dataset test = take_rows(data, assignment[k]);
        LearnerSpec fold_spec = spec;
        fold_spec.seed = derive_seed(seed, 50 + static_cast<std::uint64_t>(k), spec.seed);
        const Predictor p = fit(fold_spec, train.features, train.outcomes, loss);
        total += loss_rows(loss, predict(p, test.features), test.outcomes).mean();
    }
    return total / static_cast<double>(folds);
}

double permutation_test(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                        const Loss& loss, int T, int folds, std::uint64_t seed, int threads) {
    if (T < 1) throw InvalidConfig("permutation test needs T >= 1");
    validate_feature_set(s, data.dim());

    // Same fold structure and fit seeds for the original and each permuted
    // dataset, so scores differ only through the permutation.
    const double s0 = cross_val_score(data, spec, loss, folds, derive_seed(seed, 0));
    std::vector<double> scores(static_cast<std::size_t>(T));
    parallel_for(T, threads, [&](long t) {
        const Dataset permuted =
            permute_feature_block(data, s, derive_seed(seed, 1000 + static_cast<std::uint64_t>(t)));
        scores[static_cast<std::size_t>(t)] =
            cross_val_score(permuted, spec, loss, folds, derive_seed(seed, 0));
    });
    return permutation_pvalue(s0, scores);
}

double holdout_permutation_test(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                                const Loss& loss, double zeta, int T, std::uint64_t seed) {
    if (T < 1) throw InvalidConfig("permutation test needs T >= 1");
    if (zeta <= 0.0 || zeta >= 1.0) throw InvalidConfig("zeta must lie in (0, 1)");
    validate_feature_set(s, data.dim());

    const Index m =
        static_cast<Index>(std::llround(zeta * static_cast<double>(data.rows())));
    if (m < 2) throw InvalidSplit("holdout below 2 rows");
    auto [train, holdout] = random_split(data, m, derive_seed(seed, 0));

    LearnerSpec fit_spec = spec;
    fit_spec.seed = derive_seed(seed, 1, spec.seed);
    const Predictor p = fit(fit_spec, train.features, train.outcomes, loss);

    const double s0 = loss_rows(loss, predict(p, holdout.features), holdout.outcomes).mean();
    std::vector<double> scores(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        const Dataset permuted = permute_feature_block(
            holdout, s, derive_seed(seed, 1000 + static_cast<std::uint64_t>(t)));
        scores[static_cast<std::size_t>(t)] =
            loss_rows(loss, predict(p, permuted.features), permuted.outcomes).mean();
    }
    return permutation_pvalue(s0, scores);
}

}  // namespace bbsig
