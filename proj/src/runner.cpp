#include "bbsig/runner.hpp"

#include <cmath>

#include "bbsig/parallel.hpp"
#include "bbsig/rng.hpp"
#include "bbsig/splitting.hpp"

namespace bbsig {

RunResult run_test(const Dataset& data, const FeatureSet& s, const TestOptions& opt) {
    validate(data);
    validate_feature_set(s, data.dim());
    if (opt.U < 1) throw InvalidConfig("U must be >= 1");
    if (opt.alpha <= 0.0 || opt.alpha >= 1.0) throw InvalidConfig("alpha must lie in (0, 1)");

    const Index N = data.rows();
    RunResult result;
    result.U = opt.U;
    result.seed = opt.seed;

    double rho = 0.0;
    Index m = 0;
    if (opt.tuning == TuningMode::adaptive) {
        TuneGrid grid = opt.grid;
        grid.alpha = opt.alpha;
        grid.seed = derive_seed(opt.seed, 0x707E);
        result.tune = opt.variant == TestVariant::one_split
                          ? tune_one_split(data, s, opt.learner, opt.loss, grid, opt.mask_value)
                          : tune_two_split(data, s, opt.learner, opt.loss, grid, opt.mask_value);
        result.tuned = true;
        rho = result.tune.rho_hat;
        m = static_cast<Index>(std::llround(result.tune.zeta_hat * static_cast<double>(N)));
    } else if (opt.tuning == TuningMode::log_ratio) {
        const auto sizes = log_ratio_sizes(N, opt.N0);
        m = sizes.second;
        rho = opt.variant == TestVariant::one_split ? opt.log_ratio_rho : 0.0;
    } else {
        if (opt.fixed_zeta <= 0.0 || opt.fixed_zeta >= 1.0)
            throw InvalidConfig("fixed zeta must lie in (0, 1)");
        if (opt.fixed_rho < 0.0) throw InvalidConfig("fixed rho must be >= 0");
        m = static_cast<Index>(std::llround(opt.fixed_zeta * static_cast<double>(N)));
        rho = opt.variant == TestVariant::one_split ? opt.fixed_rho : 0.0;
    }
    if (m < 2) throw InvalidSplit("tuned inference size is below 2 rows");
    if (m > N - 1) m = N - 1;

    result.rho = opt.variant == TestVariant::one_split ? rho : 0.0;
    result.m = m;
    result.n = N - m;
    result.zeta = static_cast<double>(m) / static_cast<double>(N);

    result.splits.resize(static_cast<std::size_t>(opt.U));
    parallel_for(opt.U, opt.threads, [&](long u) {
        auto [estimation, inference] =
            random_split(data, m, derive_seed(opt.seed, 100 + static_cast<std::uint64_t>(u)));
        LearnerSpec fit_spec = opt.learner;
        fit_spec.seed = derive_seed(opt.seed, 200 + static_cast<std::uint64_t>(u), opt.learner.seed);
        auto [f_hat, g_hat] = fit_pair(fit_spec, estimation, s, opt.loss, opt.mask_value);

        TestResult r;
        if (opt.variant == TestVariant::one_split) {
            // Perturbation noise comes from its own derived stream,
            // independent of the split shuffles.
            const PerturbSpec perturb{result.rho,
                                      derive_seed(opt.seed, 300 + static_cast<std::uint64_t>(u))};
            r = one_split_statistic(f_hat, g_hat, inference, s, opt.loss, perturb, opt.mask_value);
        } else {
            r = two_split_statistic(f_hat, g_hat, inference, s, opt.loss, opt.mask_value);
        }
        r.config.rho = result.rho;
        r.config.zeta = result.zeta;
        r.config.n = result.n;
        r.config.m = m;
        r.config.U = opt.U;
        r.config.seed = opt.seed;
        result.splits[static_cast<std::size_t>(u)] = std::move(r);
    });

    if (opt.U == 1) {
        result.p_value = result.splits.front().p_value;
    } else {
        std::vector<double> pvalues;
        pvalues.reserve(result.splits.size());
        for (const auto& split : result.splits) pvalues.push_back(split.p_value);
        result.p_value = combine(pvalues, opt.combine);
        result.combine_name = opt.combine.name();
        for (auto& split : result.splits) split.config.combine = result.combine_name;
    }
    return result;
}

}  // namespace bbsig
