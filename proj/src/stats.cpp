#include "bbsig/stats.hpp"

#include <cmath>

#include "bbsig/rng.hpp"
#include "bbsig/special.hpp"

namespace bbsig {

TestResult statistic_from_deltas(const Vector& deltas) {
    const Index m = deltas.size();
    if (m < 2) throw SampleTooSmall("statistic needs at least two loss differences");

    const double mean = deltas.mean();
    const double var = (deltas.array() - mean).square().sum() / static_cast<double>(m - 1);
    const double sd = std::sqrt(var);
    if (sd == 0.0)
        throw DegenerateVariance("loss differences are constant; sample sd is zero");

    TestResult r;
    r.delta_mean = mean;
    r.delta_sd = sd;
    r.m_used = m;
    r.statistic = deltas.sum() / (std::sqrt(static_cast<double>(m)) * sd);
    r.p_value = normal_cdf(r.statistic);
    r.config.m = m;
    return r;
}

TestResult one_split_from_deltas(const Vector& raw_deltas, const PerturbSpec& perturb) {
    if (perturb.rho < 0.0 || !std::isfinite(perturb.rho))
        throw InvalidConfig("perturbation size must be finite and >= 0");
    Vector deltas = raw_deltas;
    if (perturb.rho > 0.0)
        deltas += perturb.rho * gaussian_vector(raw_deltas.size(), perturb.noise_seed);
    TestResult r = statistic_from_deltas(deltas);
    r.config.rho = perturb.rho;
    return r;
}

TestResult one_split_statistic(const Predictor& f_hat, const Predictor& g_hat,
                               const Dataset& inference, const FeatureSet& s, const Loss& loss,
                               const PerturbSpec& perturb, double mask_value) {
    if (inference.rows() < 2) throw SampleTooSmall("one-split statistic needs m >= 2");
    const Vector lf = loss_rows(loss, predict(f_hat, inference.features), inference.outcomes);
    const Dataset masked = mask(inference, s, mask_value);
    const Vector lg = loss_rows(loss, predict(g_hat, masked.features), masked.outcomes);
    return one_split_from_deltas(lf - lg, perturb);
}

TestResult two_split_statistic(const Predictor& f_hat, const Predictor& g_hat,
                               const Dataset& inference, const FeatureSet& s, const Loss& loss,
                               double mask_value) {
    const Index m = inference.rows();
    if (m < 4) throw SampleTooSmall("two-split statistic needs m >= 4");
    const Index half = m / 2;  // odd middle row dropped

    const Matrix x_first = inference.features.topRows(half);
    const Matrix y_first = inference.outcomes.topRows(half);
    const Vector lf = loss_rows(loss, predict(f_hat, x_first), y_first);

    Dataset second;
    second.features = inference.features.bottomRows(half);
    second.outcomes = inference.outcomes.bottomRows(half);
    second.column_names = inference.column_names;
    const Dataset masked = mask(second, s, mask_value);
    const Vector lg = loss_rows(loss, predict(g_hat, masked.features), masked.outcomes);

    TestResult r = statistic_from_deltas(lf - lg);
    r.config.m = m;
    return r;
}

double theoretical_power(double delta, double sigma, double alpha, TestVariant variant) {
    if (delta < 0.0) throw InvalidConfig("delta must be >= 0");
    if (sigma <= 0.0) throw InvalidConfig("sigma must be > 0");
    if (alpha <= 0.0 || alpha >= 1.0) throw InvalidConfig("alpha must lie in (0, 1)");
    const double z_alpha = normal_quantile(1.0 - alpha);
    const double shift =
        variant == TestVariant::one_split ? delta / sigma : delta / (std::sqrt(2.0) * sigma);
    return normal_cdf(shift - z_alpha);
}

namespace {

double power_gamma(double x, int U, int q) {
    const double phi = normal_cdf(x);
    const double variance =
        std::max(0.0, phi - phi * phi - 2.0 * owens_t(-x, std::sqrt(3.0) / 3.0));
    const double coeff = std::sqrt(static_cast<double>(q - 1) / static_cast<double>(U - q + 1));
    return normal_cdf(-x) + coeff * std::sqrt(variance);
}

}  // namespace

double combined_power_bound(double delta, double sigma, double alpha, int U, int q,
                            PowerBound method) {
    if (U < 2) throw InvalidConfig("combined bound needs U >= 2");
    if (q < 1 || q > U) throw InvalidConfig("q must lie in [1, U]");
    if (sigma <= 0.0) throw InvalidConfig("sigma must be > 0");
    if (alpha <= 0.0 || alpha >= 1.0) throw InvalidConfig("alpha must lie in (0, 1)");

    const double x = delta / (std::sqrt(2.0) * sigma);
    if (method == PowerBound::q_order) {
        const double bound = static_cast<double>(U) * power_gamma(x, U, q) /
                             (alpha * static_cast<double>(q));
        return 1.0 - std::min(bound, 1.0);
    }

    double c_u = 0.0;
    for (int i = 1; i <= U; ++i) c_u += 1.0 / static_cast<double>(i);
    double best = 1.0;
    for (int qq = 1; qq <= U; ++qq) {
        const double bound = c_u * static_cast<double>(U) * power_gamma(x, U, qq) /
                             (alpha * static_cast<double>(qq));
        best = std::min(best, std::min(bound, 1.0));
    }
    return 1.0 - best;
}

}  // namespace bbsig
