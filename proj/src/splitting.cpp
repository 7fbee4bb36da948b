#include "bbsig/splitting.hpp"

#include <cmath>

#include "bbsig/rng.hpp"

namespace bbsig {

std::pair<Index, Index> log_ratio_sizes(Index N, Index N0) {
    if (N0 < 4) throw SampleTooSmall("log-ratio rule needs N0 >= 4");
    if (N < N0)
        throw SampleTooSmall("sample size " + std::to_string(N) + " below the minimum N0 = " +
                             std::to_string(N0));

    const double c = static_cast<double>(N0) / (2.0 * std::log(static_cast<double>(N0) / 2.0));
    auto f = [&](double x) { return x + c * std::log(x) - static_cast<double>(N); };

    // f is strictly increasing on [1, N] with f(1) < 0 <= f(N); bisect to an
    // absolute residual below 1e-9.
    double lo = 1.0, hi = static_cast<double>(N);
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (std::fabs(v) <= 1e-9) break;
        if (v > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    // Guard against roots that are exact integers landing a hair above them.
    const Index n = static_cast<Index>(std::ceil(mid - 1e-7));
    return {n, N - n};
}

std::pair<Dataset, Dataset> random_split(const Dataset& data, Index m, std::uint64_t seed) {
    const Index N = data.rows();
    if (m < 2 || m > N - 1)
        throw InvalidSplit("inference size m = " + std::to_string(m) +
                           " outside [2, N-1] for N = " + std::to_string(N));

    const auto perm = random_permutation(N, seed);
    const Index n = N - m;

    Dataset estimation, inference;
    estimation.features.resize(n, data.dim());
    estimation.outcomes.resize(n, data.outcome_dim());
    inference.features.resize(m, data.dim());
    inference.outcomes.resize(m, data.outcome_dim());
    estimation.column_names = data.column_names;
    inference.column_names = data.column_names;

    for (Index i = 0; i < n; ++i) {
        estimation.features.row(i) = data.features.row(perm[static_cast<std::size_t>(i)]);
        estimation.outcomes.row(i) = data.outcomes.row(perm[static_cast<std::size_t>(i)]);
    }
    for (Index i = 0; i < m; ++i) {
        inference.features.row(i) = data.features.row(perm[static_cast<std::size_t>(n + i)]);
        inference.outcomes.row(i) = data.outcomes.row(perm[static_cast<std::size_t>(n + i)]);
    }
    return {std::move(estimation), std::move(inference)};
}

Dataset permute_feature_block(const Dataset& data, const FeatureSet& s, std::uint64_t seed) {
    validate_feature_set(s, data.dim());
    Dataset out = data;
    const auto perm = random_permutation(data.rows(), seed);
    for (int j : s.indices)
        for (Index i = 0; i < data.rows(); ++i)
            out.features(i, j) = data.features(perm[static_cast<std::size_t>(i)], j);
    return out;
}

}  // namespace bbsig
