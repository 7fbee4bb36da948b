#include "bbsig/simharness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "bbsig/json_writer.hpp"
#include "bbsig/parallel.hpp"
#include "bbsig/rng.hpp"

namespace bbsig {

Matrix ar_covariance(int d, double r, double B) {
    if (d < 1) throw InvalidConfig("dimension must be >= 1");
    if (r < 0.0 || r >= 1.0) throw InvalidConfig("correlation r must lie in [0, 1)");
    if (B <= 0.0) throw InvalidConfig("magnitude B must be > 0");
    Matrix sigma(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sigma(i, j) = B * std::pow(r, std::abs(i - j));
    return sigma;
}

namespace {

void validate_sim(const SimConfig& cfg) {
    if (cfg.N < 2) throw InvalidConfig("N must be >= 2");
    if (cfg.d < 2) throw InvalidConfig("d must be >= 2");
    if (cfg.B <= 0.0) throw InvalidConfig("B must be > 0");
    if (cfg.r < 0.0 || cfg.r >= 1.0) throw InvalidConfig("r must lie in [0, 1)");
    if (cfg.depth < 1) throw InvalidConfig("depth must be >= 1");
    if (cfg.width < 1) throw InvalidConfig("width must be >= 1");
    if (cfg.tau <= 0.0) throw InvalidConfig("tau must be > 0");
    if (cfg.s0_size < 1 || cfg.s0_size >= cfg.d)
        throw InvalidConfig("s0_size must lie in [1, d)");
    if (cfg.noise_sd < 0.0) throw InvalidConfig("noise_sd must be >= 0");
}

// Covariance of the partial-observation design: unit diagonal, 0.1 in the
// first row and column, zero elsewhere (scaled by B).
Matrix cross_covariance(int d, double B) {
    Matrix sigma = Matrix::Identity(d, d);
    for (int j = 1; j < d; ++j) {
        sigma(0, j) = 0.1;
        sigma(j, 0) = 0.1;
    }
    return B * sigma;
}

}  // namespace

std::vector<Matrix> true_network_weights(const SimConfig& cfg) {
    validate_sim(cfg);
    auto engine = make_engine(derive_seed(cfg.seed, 0xBEEF));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Index> dims;
    dims.push_back(cfg.d);
    for (int l = 1; l < cfg.depth; ++l) dims.push_back(cfg.width);
    dims.push_back(1);

    std::vector<Matrix> weights;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const Index fan_in = dims[l], fan_out = dims[l + 1];
        Matrix w(fan_out, fan_in);
        const double target = cfg.tau / std::sqrt(static_cast<double>(fan_in));
        for (Index j = 0; j < fan_in; ++j) {
            Vector col(fan_out);
            for (Index i = 0; i < fan_out; ++i) col[i] = normal(engine);
            const double norm = col.norm();
            w.col(j) = norm > 0.0 ? Vector(col * (target / norm)) : col;
        }
        weights.push_back(std::move(w));
    }
    for (int j = 0; j < cfg.s0_size; ++j) weights.front().col(j).setZero();
    return weights;
}

Vector true_network_eval(const std::vector<Matrix>& weights, const Matrix& x) {
    Matrix h = x.transpose();
    for (const auto& w : weights) h = (w * h).cwiseMax(0.0);
    return h.transpose().col(0);
}

std::pair<Dataset, FeatureSet> gen_network_regression(const SimConfig& cfg) {
    validate_sim(cfg);
    auto engine = make_engine(derive_seed(cfg.seed, 0xDA7A));
    std::normal_distribution<double> normal(0.0, 1.0);

    const Matrix sigma = cfg.partial_observation ? cross_covariance(cfg.d, cfg.B)
                                                 : ar_covariance(cfg.d, cfg.r, cfg.B);
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw InvalidConfig("covariance matrix is not positive definite");
    const Matrix chol = llt.matrixL();

    Matrix z(cfg.N, cfg.d);
    for (Index i = 0; i < cfg.N; ++i)
        for (int j = 0; j < cfg.d; ++j) z(i, j) = normal(engine);
    Matrix x = z * chol.transpose();

    const auto weights = true_network_weights(cfg);

    Matrix x_for_outcome = x;
    Index observed = cfg.d;
    if (cfg.partial_observation) {
        if (cfg.N < 3) throw InvalidConfig("partial observation needs N >= 3");
        observed = static_cast<Index>(std::floor(
            static_cast<double>(cfg.d) * (1.0 - 1.0 / std::log(static_cast<double>(cfg.N)))));
        if (observed <= cfg.s0_size)
            throw InvalidConfig("partial observation leaves too few observed columns");
        x_for_outcome.rightCols(cfg.d - observed).setZero();
    }

    Vector y = true_network_eval(weights, x_for_outcome);
    for (Index i = 0; i < cfg.N; ++i) y[i] += cfg.noise_sd * normal(engine);

    Dataset data;
    data.features = x.leftCols(observed);
    data.outcomes = y;

    std::vector<int> s0(static_cast<std::size_t>(cfg.s0_size));
    for (int j = 0; j < cfg.s0_size; ++j) s0[static_cast<std::size_t>(j)] = j;
    return {std::move(data), FeatureSet::of(std::move(s0))};
}

double misspecified_mean(const Vector& x) {
    if (x.size() != 10) throw InvalidConfig("misspecified design has d = 10");
    return 0.1 * x[5] + 0.2 * x[6] * x[6] + 0.3 * x[7] * x[7] * x[7] + 0.4 * x[8] * x[9];
}

std::pair<Dataset, std::map<std::string, FeatureSet>> gen_misspecified(Index N,
                                                                       std::uint64_t seed) {
    if (N < 2) throw InvalidConfig("N must be >= 2");
    auto engine = make_engine(derive_seed(seed, 0x6E5));
    std::normal_distribution<double> normal(0.0, 1.0);

    Dataset data;
    data.features.resize(N, 10);
    data.outcomes.resize(N, 1);
    for (Index i = 0; i < N; ++i) {
        for (int j = 0; j < 10; ++j) data.features(i, j) = normal(engine);
        data.outcomes(i, 0) =
            misspecified_mean(data.features.row(i).transpose()) + 0.3 * normal(engine);
    }

    std::map<std::string, FeatureSet> sets;
    sets.emplace("null", FeatureSet::of({0, 1, 2, 3, 4}));
    sets.emplace("mixed", FeatureSet::of({2, 3, 4, 5, 6}));
    sets.emplace("active", FeatureSet::of({5, 6, 7}));
    return {std::move(data), std::move(sets)};
}

std::array<FeatureSet, 4> hypothesized_sets(int s0_size, int d) {
    if (s0_size < 1 || s0_size >= d) throw InvalidConfig("s0_size must lie in [1, d)");
    auto window = [&](int start) {
        if (start < 0 || start + s0_size > d)
            throw InvalidConfig("hypothesized window [" + std::to_string(start) + ", " +
                                std::to_string(start + s0_size) + ") does not fit in [0, " +
                                std::to_string(d) + ")");
        std::vector<int> idx(static_cast<std::size_t>(s0_size));
        for (int i = 0; i < s0_size; ++i) idx[static_cast<std::size_t>(i)] = start + i;
        return FeatureSet::of(std::move(idx));
    };
    return {window(0), window(s0_size / 2), window(d / 2), window(d - s0_size)};
}

namespace {

struct CasePlan {
    std::string name;
    bool null_true = false;
};

}  // namespace

RateReport estimate_rates(const ExperimentConfig& cfg) {
    if (cfg.reps_null < 1 || cfg.reps_alt < 1) throw InvalidConfig("reps must be >= 1");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw InvalidConfig("alpha must lie in [0, 1]");

    std::vector<CasePlan> plans;
    if (cfg.design == "network") {
        plans = {{"case_i", true}, {"case_ii", false}, {"case_iii", false}, {"case_iv", false}};
    } else if (cfg.design == "misspecified") {
        plans = {{"null", true}, {"mixed", false}, {"active", false}};
    } else if (cfg.design == "partial-observation") {
        plans = {{"null", true}};
    } else {
        throw InvalidConfig("unknown design '" + cfg.design + "'");
    }

    RateReport report;
    double total_runtime = 0.0;
    long total_runs = 0;

    for (std::size_t c = 0; c < plans.size(); ++c) {
        const CasePlan& plan = plans[c];
        const long reps = plan.null_true ? cfg.reps_null : cfg.reps_alt;

        std::vector<int> outcome(static_cast<std::size_t>(reps), -1);  // -1 failure, 0/1 decision
        std::vector<double> runtimes(static_cast<std::size_t>(reps), 0.0);

        parallel_for(reps, cfg.threads, [&](long rep) {
            const std::uint64_t gen_seed =
                derive_seed(cfg.seed, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(rep));
            const auto start = std::chrono::steady_clock::now();
            try {
                Dataset data;
                FeatureSet hypothesis{{0}};
                if (cfg.design == "misspecified") {
                    auto [d, sets] = gen_misspecified(cfg.sim.N, gen_seed);
                    data = std::move(d);
                    hypothesis = sets.at(plan.name);
                } else {
                    SimConfig sim = cfg.sim;
                    sim.seed = gen_seed;
                    sim.partial_observation = cfg.design == "partial-observation";
                    auto [d, s0] = gen_network_regression(sim);
                    data = std::move(d);
                    if (cfg.design == "partial-observation") {
                        hypothesis = s0;
                    } else {
                        const auto sets = hypothesized_sets(sim.s0_size, sim.d);
                        hypothesis = sets[c];
                    }
                }

                TestOptions opt = cfg.test;
                opt.threads = 1;
                opt.seed = derive_seed(cfg.seed, 0xC0DE + static_cast<std::uint64_t>(c),
                                       static_cast<std::uint64_t>(rep));
                const RunResult r = run_test(data, hypothesis, opt);
                outcome[static_cast<std::size_t>(rep)] = r.p_value <= cfg.alpha ? 1 : 0;
            } catch (const Error&) {
                outcome[static_cast<std::size_t>(rep)] = -1;
            }
            const auto stop = std::chrono::steady_clock::now();
            runtimes[static_cast<std::size_t>(rep)] =
                std::chrono::duration<double>(stop - start).count();
        });

        CaseRate rate;
        rate.name = plan.name;
        for (long rep = 0; rep < reps; ++rep) {
            const int o = outcome[static_cast<std::size_t>(rep)];
            if (o < 0) {
                ++rate.failures;
            } else {
                ++rate.completed;
                rate.rejections += o;
            }
            rate.avg_runtime_sec += runtimes[static_cast<std::size_t>(rep)];
        }
        rate.avg_runtime_sec /= static_cast<double>(reps);
        rate.proportion = rate.completed > 0
                              ? static_cast<double>(rate.rejections) /
                                    static_cast<double>(rate.completed)
                              : 0.0;
        total_runtime += rate.avg_runtime_sec * static_cast<double>(reps);
        total_runs += reps;

        if (plan.null_true)
            report.type1 = rate.proportion;
        else
            report.powers.push_back(rate.proportion);
        report.cases.push_back(std::move(rate));
    }

    report.avg_runtime_sec = total_runs > 0 ? total_runtime / static_cast<double>(total_runs) : 0.0;
    return report;
}

namespace {

std::string canonical_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    const char* tuning = cfg.test.tuning == TuningMode::adaptive    ? "adaptive"
                         : cfg.test.tuning == TuningMode::log_ratio ? "log-ratio"
                                                                    : "fixed";
    out << cfg.design << '|' << cfg.sim.N << ',' << cfg.sim.d << ',' << cfg.sim.B << ','
        << cfg.sim.r << ',' << cfg.sim.depth << ',' << cfg.sim.width << ',' << cfg.sim.tau << ','
        << cfg.sim.s0_size << ',' << cfg.sim.noise_sd << '|'
        << (cfg.test.variant == TestVariant::one_split ? "one-split" : "two-split") << ','
        << tuning << ',' << cfg.test.U << ',' << cfg.test.combine.name() << ',' << cfg.test.N0
        << ',' << cfg.test.log_ratio_rho << ',' << cfg.test.fixed_zeta << ','
        << cfg.test.fixed_rho << '|';
    for (double z : cfg.test.grid.zetas) out << z << ';';
    out << '|';
    for (double r : cfg.test.grid.rhos) out << r << ';';
    out << '|' << cfg.test.grid.T << '|' << cfg.test.learner.epochs << ','
        << cfg.test.learner.batch_size << ',' << cfg.test.learner.learning_rate << ','
        << cfg.test.learner.validation_split << ',' << cfg.test.learner.patience << ',';
    for (int h : cfg.test.learner.hidden) out << h << ';';
    out << '|' << cfg.reps_null << ',' << cfg.reps_alt << ',' << cfg.alpha << ',' << cfg.seed;
    return out.str();
}

}  // namespace

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a over the canonical serialization.
    const std::string text = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string rates_csv(const ExperimentConfig& cfg, const RateReport& report) {
    std::ostringstream out;
    const std::uint64_t hash = config_hash(cfg);
    out << "config_hash,case,rejections,reps,proportion,avg_runtime_sec,failures\n";
    for (const auto& rate : report.cases) {
        out << hash << ',' << rate.name << ',' << rate.rejections << ','
            << (rate.completed + rate.failures) << ',' << json_double(rate.proportion) << ','
            << json_double(rate.avg_runtime_sec) << ',' << rate.failures << '\n';
    }
    return out.str();
}

std::string rates_json(const ExperimentConfig& cfg, const RateReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value("1");
    w.key("config_hash").value(config_hash(cfg));
    w.key("design").value(cfg.design);
    w.key("config");
    {
        w.begin_object();
        w.key("N").value(static_cast<std::int64_t>(cfg.sim.N));
        w.key("d").value(cfg.sim.d);
        w.key("B").value(cfg.sim.B);
        w.key("r").value(cfg.sim.r);
        w.key("depth").value(cfg.sim.depth);
        w.key("width").value(cfg.sim.width);
        w.key("tau").value(cfg.sim.tau);
        w.key("s0_size").value(cfg.sim.s0_size);
        w.key("noise_sd").value(cfg.sim.noise_sd);
        w.key("variant").value(cfg.test.variant == TestVariant::one_split ? "one-split"
                                                                          : "two-split");
        w.key("tuning").value(cfg.test.tuning == TuningMode::adaptive    ? "adaptive"
                              : cfg.test.tuning == TuningMode::log_ratio ? "log-ratio"
                                                                         : "fixed");
        w.key("U").value(cfg.test.U);
        w.key("combine").value(cfg.test.combine.name());
        w.key("reps_null").value(cfg.reps_null);
        w.key("reps_alt").value(cfg.reps_alt);
        w.key("alpha").value(cfg.alpha);
        w.key("seed").value(cfg.seed);
        w.end_object();
    }
    w.key("type1").value(report.type1);
    w.key("powers");
    w.begin_array();
    for (double p : report.powers) w.value(p);
    w.end_array();
    w.key("cases");
    w.begin_array();
    for (const auto& rate : report.cases) {
        w.begin_object();
        w.key("case").value(rate.name);
        w.key("rejections").value(static_cast<std::int64_t>(rate.rejections));
        w.key("completed").value(static_cast<std::int64_t>(rate.completed));
        w.key("failures").value(static_cast<std::int64_t>(rate.failures));
        w.key("proportion").value(rate.proportion);
        w.key("avg_runtime_sec").value(rate.avg_runtime_sec);
        w.end_object();
    }
    w.end_array();
    w.key("avg_runtime_sec").value(report.avg_runtime_sec);
    w.end_object();
    return w.str();
}

}  // namespace bbsig
