#include "bbsig/adaptive.hpp"

#include <cmath>
#include <limits>

#include "bbsig/rng.hpp"
#include "bbsig/splitting.hpp"
#include "bbsig/stats.hpp"

namespace bbsig {

namespace {

void validate_grid(const TuneGrid& grid, bool with_rhos) {
    if (grid.zetas.empty()) throw InvalidConfig("zeta grid is empty");
    if (with_rhos && grid.rhos.empty()) throw InvalidConfig("rho grid is empty");
    if (grid.T < 1) throw InvalidConfig("permutation count T must be >= 1");
    if (grid.alpha <= 0.0 || grid.alpha >= 1.0) throw InvalidConfig("alpha must lie in (0, 1)");
    auto ascending = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] <= v[i - 1]) return false;
        return true;
    };
    if (!ascending(grid.zetas)) throw InvalidConfig("zeta grid must be strictly ascending");
    if (with_rhos && !ascending(grid.rhos))
        throw InvalidConfig("rho grid must be strictly ascending");
    for (double z : grid.zetas)
        if (z <= 0.0 || z >= 1.0) throw InvalidConfig("zeta values must lie in (0, 1)");
    for (double r : grid.rhos)
        if (with_rhos && r <= 0.0) throw InvalidConfig("rho values must be > 0");
}

// One fitted cell at a fixed zeta: the permuted-estimation fit plus the T
// permuted inference samples. Because masking zeroes the S block, the
// g losses do not depend on the permutation and are computed once.
struct CellEvaluator {
    Vector lg;                   // masked-model losses, length m
    std::vector<Vector> lf;      // per permutation t, length m
    std::vector<std::uint64_t> noise_seeds;
    double alpha = 0.05;

    double type1_one_split(double rho) const {
        int rejections = 0;
        for (std::size_t t = 0; t < lf.size(); ++t) {
            const TestResult r =
                one_split_from_deltas(lf[t] - lg, PerturbSpec{rho, noise_seeds[t]});
            if (r.p_value <= alpha) ++rejections;
        }
        return static_cast<double>(rejections) / static_cast<double>(lf.size());
    }

    double type1_two_split() const {
        const Index m = lg.size();
        const Index half = m / 2;
        if (half < 2) throw SampleTooSmall("two-split tuning needs m >= 4");
        int rejections = 0;
        for (const auto& losses_f : lf) {
            const Vector deltas = losses_f.head(half) - lg.tail(half);
            const TestResult r = statistic_from_deltas(deltas);
            if (r.p_value <= alpha) ++rejections;
        }
        return static_cast<double>(rejections) / static_cast<double>(lf.size());
    }
};

CellEvaluator make_evaluator(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                             const Loss& loss, double zeta, int T, double alpha,
                             std::uint64_t seed, double mask_value) {
    if (zeta <= 0.0 || zeta >= 1.0) throw InvalidConfig("zeta must lie in (0, 1)");
    const Index N = data.rows();
    const Index m = static_cast<Index>(std::llround(zeta * static_cast<double>(N)));
    if (m < 2) throw InvalidSplit("zeta yields an inference sample below 2 rows");

    auto [estimation, inference] = random_split(data, m, derive_seed(seed, 0));
    const Dataset est_permuted = permute_feature_block(estimation, s, derive_seed(seed, 1));
    LearnerSpec fit_spec = spec;
    fit_spec.seed = derive_seed(seed, 2, spec.seed);
    auto [f_hat, g_hat] = fit_pair(fit_spec, est_permuted, s, loss, mask_value);

    CellEvaluator cell;
    cell.alpha = alpha;
    const Dataset masked = mask(inference, s, mask_value);
    cell.lg = loss_rows(loss, predict(g_hat, masked.features), masked.outcomes);
    cell.lf.reserve(static_cast<std::size_t>(T));
    cell.noise_seeds.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        const Dataset permuted =
            permute_feature_block(inference, s, derive_seed(seed, 100 + static_cast<std::uint64_t>(t)));
        cell.lf.push_back(loss_rows(loss, predict(f_hat, permuted.features), permuted.outcomes));
        cell.noise_seeds.push_back(derive_seed(seed, 10000 + static_cast<std::uint64_t>(t)));
    }
    return cell;
}

}  // namespace

double estimate_type1(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                      const Loss& loss, double zeta, double rho, int T, double alpha,
                      std::uint64_t seed, double mask_value) {
    if (T < 1) throw InvalidConfig("permutation count T must be >= 1");
    const CellEvaluator cell = make_evaluator(data, s, spec, loss, zeta, T, alpha, seed, mask_value);
    return cell.type1_one_split(rho);
}

double estimate_type1_two_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                                const Loss& loss, double zeta, int T, double alpha,
                                std::uint64_t seed, double mask_value) {
    if (T < 1) throw InvalidConfig("permutation count T must be >= 1");
    const CellEvaluator cell = make_evaluator(data, s, spec, loss, zeta, T, alpha, seed, mask_value);
    return cell.type1_two_split();
}

TuneResult tune_one_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                          const Loss& loss, const TuneGrid& grid, double mask_value) {
    validate_grid(grid, true);

    TuneResult best;
    best.estimated_type1 = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    for (std::size_t zi = 0; zi < grid.zetas.size(); ++zi) {
        const double zeta = grid.zetas[zi];
        const CellEvaluator cell =
            make_evaluator(data, s, spec, loss, zeta, grid.T, grid.alpha,
                           derive_seed(grid.seed, zi), mask_value);
        for (double rho : grid.rhos) {
            const double err = cell.type1_one_split(rho);
            ++evaluations;
            if (err <= grid.alpha) {
                return TuneResult{zeta, rho, err, evaluations, true};
            }
            if (err < best.estimated_type1) {
                best.zeta_hat = zeta;
                best.rho_hat = rho;
                best.estimated_type1 = err;
            }
        }
    }
    best.evaluations = evaluations;
    best.controlled = false;
    return best;
}

TuneResult tune_two_split(const Dataset& data, const FeatureSet& s, const LearnerSpec& spec,
                          const Loss& loss, const TuneGrid& grid, double mask_value) {
    validate_grid(grid, false);

    TuneResult best;
    best.estimated_type1 = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    for (std::size_t zi = 0; zi < grid.zetas.size(); ++zi) {
        const double zeta = grid.zetas[zi];
        const CellEvaluator cell =
            make_evaluator(data, s, spec, loss, zeta, grid.T, grid.alpha,
                           derive_seed(grid.seed, zi), mask_value);
        const double err = cell.type1_two_split();
        ++evaluations;
        if (err <= grid.alpha) {
            return TuneResult{zeta, 0.0, err, evaluations, true};
        }
        if (err < best.estimated_type1) {
            best.zeta_hat = zeta;
            best.rho_hat = 0.0;
            best.estimated_type1 = err;
        }
    }
    best.evaluations = evaluations;
    best.controlled = false;
    return best;
}

}  // namespace bbsig
