// bbsig command-line front end: run a relevance test on a CSV dataset,
// drive the simulation harness, or evaluate the theoretical power formulas.
// JSON goes to stdout; exit 2 = bad input, exit 3 = runtime failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbsig/csv.hpp"
#include "bbsig/json_writer.hpp"
#include "bbsig/learner.hpp"
#include "bbsig/rng.hpp"
#include "bbsig/runner.hpp"
#include "bbsig/simharness.hpp"
#include "bbsig/special.hpp"
#include "bbsig/splitting.hpp"

namespace {

using namespace bbsig;

constexpr int kExitBadInput = 2;
constexpr int kExitRuntime = 3;

std::uint64_t env_seed() {
    const char* raw = std::getenv("BLACKBOX_SIG_SEED");
    if (raw == nullptr) return 0;
    try {
        return std::stoull(raw);
    } catch (...) {
        throw InvalidConfig("BLACKBOX_SIG_SEED is not a valid integer");
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.empty()) throw InvalidConfig("empty numeric list '" + text + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty() || text == "none") return out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoi(token));
    }
    return out;
}

Loss parse_loss(const std::string& name) {
    if (name == "squared") return Loss{LossKind::squared_error, 1e-12};
    if (name == "cross-entropy") return Loss{LossKind::cross_entropy, 1e-12};
    if (name == "zero-one") return Loss{LossKind::zero_one, 1e-12};
    throw InvalidConfig("unknown loss '" + name + "'");
}

void emit_error(const std::string& kind, const std::string& what) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value("1");
    w.key("error").value(kind);
    w.key("message").value(what);
    w.end_object();
    std::cout << w.str() << "\n";
}

// ---------------------------------------------------------------------------
// bbsig test
// ---------------------------------------------------------------------------

struct TestArgs {
    std::string csv_path;
    bool no_header = false;
    std::string response;
    bool classification = false;
    std::string features;
    std::string method = "one-split";
    std::string tuning = "adaptive";
    std::string loss = "squared";
    std::string combine = "hommel";
    int U = 5;
    double alpha = 0.05;
    double rho = 0.01;
    long N0 = 1000;
    std::string zeta_grid = "0.2,0.4,0.6,0.8";
    std::string rho_grid = "0.01,0.05,0.1,0.5,1.0";
    int T = 100;
    double mask_value = 0.0;
    std::string hidden = "16";
    int epochs = 100;
    int batch_size = 64;
    double learning_rate = 0.05;
    double validation_split = 0.2;
    int patience = 10;
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string save_models;
};

int run_cmd_test(const TestArgs& args) {
    CsvOptions csv_opt;
    csv_opt.has_header = !args.no_header;
    csv_opt.response = args.response;
    csv_opt.classification = args.classification;
    const Dataset data = load_csv(args.csv_path, csv_opt);

    const FeatureSet s = parse_feature_set(args.features, data.dim(), data.column_names);

    TestOptions opt;
    opt.variant = args.method == "two-split" ? TestVariant::two_split : TestVariant::one_split;
    opt.tuning = args.tuning == "log-ratio" ? TuningMode::log_ratio : TuningMode::adaptive;
    opt.grid.zetas = parse_double_list(args.zeta_grid);
    opt.grid.rhos = parse_double_list(args.rho_grid);
    opt.grid.T = args.T;
    opt.N0 = args.N0;
    opt.log_ratio_rho = args.rho;
    opt.U = args.U;
    opt.combine = CombineMethod::parse(args.combine);
    opt.loss = parse_loss(args.loss);
    opt.alpha = args.alpha;
    opt.mask_value = args.mask_value;
    opt.threads = args.threads;
    opt.seed = args.seed_given ? args.seed : env_seed();

    opt.learner.hidden = parse_int_list(args.hidden);
    opt.learner.output =
        opt.loss.kind == LossKind::squared_error ? OutputKind::identity : OutputKind::softmax;
    opt.learner.epochs = args.epochs;
    opt.learner.batch_size = args.batch_size;
    opt.learner.learning_rate = args.learning_rate;
    opt.learner.validation_split = args.validation_split;
    opt.learner.patience = args.patience;

    const RunResult r = run_test(data, s, opt);

    if (!args.save_models.empty()) {
        auto [estimation, inference] =
            random_split(data, r.m, derive_seed(opt.seed, 100));
        LearnerSpec fit_spec = opt.learner;
        fit_spec.seed = derive_seed(opt.seed, 200, opt.learner.seed);
        auto [f_hat, g_hat] = fit_pair(fit_spec, estimation, s, opt.loss, opt.mask_value);
        save_predictor(f_hat, args.save_models + "_f.json");
        save_predictor(g_hat, args.save_models + "_g.json");
    }

    JsonWriter w;
    w.begin_object();
    w.key("schema").value("1");
    w.key("p_value").value(r.p_value);
    w.key("statistics");
    w.begin_array();
    for (const auto& split : r.splits) w.value(split.statistic);
    w.end_array();
    w.key("split_p_values");
    w.begin_array();
    for (const auto& split : r.splits) w.value(split.p_value);
    w.end_array();
    w.key("rho").value(r.rho);
    w.key("zeta").value(r.zeta);
    w.key("n").value(static_cast<std::int64_t>(r.n));
    w.key("m").value(static_cast<std::int64_t>(r.m));
    w.key("U").value(r.U);
    if (r.U > 1) w.key("combine").value(r.combine_name);
    w.key("alpha").value(opt.alpha);
    w.key("decision").value(r.p_value <= opt.alpha ? "reject" : "fail to reject");
    if (r.tuned) {
        w.key("tuning");
        w.begin_object();
        w.key("controlled").value(r.tune.controlled);
        w.key("estimated_type1").value(r.tune.estimated_type1);
        w.key("evaluations").value(r.tune.evaluations);
        w.end_object();
    }
    w.key("seed").value(opt.seed);
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bbsig simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string example;
    std::string config_path;
    int reps = 0;       // 0 = keep preset
    int reps_alt = 0;
    long N = 0;
    int d = 0;
    double B = 0.0;
    double r = -1.0;
    int depth = 0;
    int width = 0;
    double tau = 0.0;
    int s0 = 0;
    double noise_sd = -1.0;
    std::string method = "one-split";
    std::string tuning = "adaptive";
    int U = 1;
    std::string combine = "hommel";
    double alpha = 0.05;
    bool alpha_given = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    std::string out_prefix = "simulate";
    bool full_scale = false;
};

ExperimentConfig preset_for_example(const std::string& example) {
    ExperimentConfig cfg;
    cfg.design = "network";
    cfg.sim.N = 1000;
    cfg.sim.d = 20;
    cfg.sim.B = 0.4;
    cfg.sim.r = 0.25;
    cfg.sim.depth = 2;
    cfg.sim.width = 16;
    cfg.sim.tau = 2.0;
    cfg.sim.s0_size = 5;
    cfg.sim.noise_sd = 1.0;
    cfg.reps_null = 200;
    cfg.reps_alt = 100;

    cfg.test.variant = TestVariant::one_split;
    cfg.test.tuning = TuningMode::adaptive;
    cfg.test.U = 1;
    cfg.test.combine = CombineMethod::parse("hommel");
    cfg.test.loss = Loss{LossKind::squared_error, 1e-12};
    cfg.test.grid.T = 100;
    cfg.test.learner.hidden = {16};
    cfg.test.learner.epochs = 100;
    cfg.test.learner.batch_size = 64;
    cfg.test.learner.learning_rate = 0.05;
    cfg.test.learner.validation_split = 0.2;
    cfg.test.learner.patience = 50;

    if (example == "1") {
        cfg.sim.N = 2000;
    } else if (example == "2") {
        cfg.sim.B = 0.2;
    } else if (example == "3") {
        cfg.sim.depth = 3;
        cfg.sim.width = 8;
        cfg.test.learner.hidden = {8, 8};
    } else if (example == "4") {
        cfg.sim.s0_size = 3;
    } else if (example == "5") {
        cfg.sim.r = 0.0;
    } else if (example == "6") {
        cfg.test.U = 5;
        cfg.sim.N = 2000;
    } else if (example == "misspecified") {
        cfg.design = "misspecified";
        cfg.sim.N = 1000;
        cfg.test.learner.hidden = {16};
    } else if (example == "perturbation-ablation") {
        cfg.design = "partial-observation";
        cfg.sim.N = 1000;
        cfg.sim.d = 30;
        cfg.sim.s0_size = 3;
        cfg.sim.depth = 2;
        cfg.sim.width = 8;
        cfg.test.tuning = TuningMode::fixed;
        cfg.test.fixed_zeta = 0.2;
        cfg.test.fixed_rho = 1.0;
    } else {
        throw InvalidConfig("unknown example '" + example + "'");
    }
    return cfg;
}

ExperimentConfig config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("bad config JSON: ") + e.what());
    }
    ExperimentConfig cfg = preset_for_example(doc.value("example", std::string("1")));
    cfg.design = doc.value("design", cfg.design);
    cfg.sim.N = doc.value("N", cfg.sim.N);
    cfg.sim.d = doc.value("d", cfg.sim.d);
    cfg.sim.B = doc.value("B", cfg.sim.B);
    cfg.sim.r = doc.value("r", cfg.sim.r);
    cfg.sim.depth = doc.value("depth", cfg.sim.depth);
    cfg.sim.width = doc.value("width", cfg.sim.width);
    cfg.sim.tau = doc.value("tau", cfg.sim.tau);
    cfg.sim.s0_size = doc.value("s0_size", cfg.sim.s0_size);
    cfg.sim.noise_sd = doc.value("noise_sd", cfg.sim.noise_sd);
    cfg.reps_null = doc.value("reps_null", cfg.reps_null);
    cfg.reps_alt = doc.value("reps_alt", cfg.reps_alt);
    cfg.alpha = doc.value("alpha", cfg.alpha);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("method"))
        cfg.test.variant = doc.at("method").get<std::string>() == "two-split"
                               ? TestVariant::two_split
                               : TestVariant::one_split;
    if (doc.contains("tuning")) {
        const std::string t = doc.at("tuning").get<std::string>();
        cfg.test.tuning = t == "log-ratio" ? TuningMode::log_ratio
                          : t == "fixed"   ? TuningMode::fixed
                                           : TuningMode::adaptive;
    }
    cfg.test.U = doc.value("U", cfg.test.U);
    cfg.test.fixed_zeta = doc.value("fixed_zeta", cfg.test.fixed_zeta);
    cfg.test.fixed_rho = doc.value("fixed_rho", cfg.test.fixed_rho);
    if (doc.contains("zeta_grid"))
        cfg.test.grid.zetas = doc.at("zeta_grid").get<std::vector<double>>();
    if (doc.contains("rho_grid"))
        cfg.test.grid.rhos = doc.at("rho_grid").get<std::vector<double>>();
    cfg.test.grid.T = doc.value("T", cfg.test.grid.T);
    if (doc.contains("combine"))
        cfg.test.combine = CombineMethod::parse(doc.at("combine").get<std::string>());
    cfg.test.learner.epochs = doc.value("epochs", cfg.test.learner.epochs);
    cfg.test.learner.batch_size = doc.value("batch_size", cfg.test.learner.batch_size);
    cfg.test.learner.learning_rate = doc.value("learning_rate", cfg.test.learner.learning_rate);
    cfg.test.learner.patience = doc.value("patience", cfg.test.learner.patience);
    if (doc.contains("hidden")) cfg.test.learner.hidden = doc.at("hidden").get<std::vector<int>>();
    return cfg;
}

int run_cmd_simulate(const SimulateArgs& args) {
    ExperimentConfig cfg = args.config_path.empty() ? preset_for_example(args.example)
                                                    : config_from_json(args.config_path);
    if (args.reps > 0) {
        cfg.reps_null = args.reps;
        cfg.reps_alt = args.reps;
    }
    if (args.reps_alt > 0) cfg.reps_alt = args.reps_alt;
    if (args.N > 0) cfg.sim.N = args.N;
    if (args.d > 0) cfg.sim.d = args.d;
    if (args.B > 0.0) cfg.sim.B = args.B;
    if (args.r >= 0.0) cfg.sim.r = args.r;
    if (args.depth > 0) cfg.sim.depth = args.depth;
    if (args.width > 0) cfg.sim.width = args.width;
    if (args.tau > 0.0) cfg.sim.tau = args.tau;
    if (args.s0 > 0) cfg.sim.s0_size = args.s0;
    if (args.noise_sd >= 0.0) cfg.sim.noise_sd = args.noise_sd;
    if (args.config_path.empty()) {
        cfg.test.variant =
            args.method == "two-split" ? TestVariant::two_split : TestVariant::one_split;
        if (cfg.design != "partial-observation")
            cfg.test.tuning =
                args.tuning == "log-ratio" ? TuningMode::log_ratio : TuningMode::adaptive;
        cfg.test.U = args.U;
        cfg.test.combine = CombineMethod::parse(args.combine);
    }
    if (args.alpha_given || args.config_path.empty()) cfg.alpha = args.alpha;
    if (args.seed_given)
        cfg.seed = args.seed;
    else if (args.config_path.empty() || cfg.seed == 0)
        cfg.seed = env_seed();
    cfg.threads = args.threads;
    if (args.full_scale) {
        // Paper-scale repetition counts; expect long offline runs.
        cfg.reps_null = 1000;
        cfg.reps_alt = 100;
    }

    const RateReport report = estimate_rates(cfg);

    const std::string csv_path = args.out_prefix + ".csv";
    const std::string json_path = args.out_prefix + ".json";
    {
        std::ofstream csv(csv_path);
        if (!csv) throw InvalidConfig("cannot write '" + csv_path + "'");
        csv << rates_csv(cfg, report);
        std::ofstream json(json_path);
        if (!json) throw InvalidConfig("cannot write '" + json_path + "'");
        json << rates_json(cfg, report) << "\n";
    }

    std::printf("design=%s N=%ld config_hash=%llu\n", cfg.design.c_str(),
                static_cast<long>(cfg.sim.N),
                static_cast<unsigned long long>(config_hash(cfg)));
    std::printf("%-12s %12s %10s %10s %12s\n", "case", "rejections", "reps", "prop",
                "runtime_s");
    for (const auto& c : report.cases) {
        std::printf("%-12s %12ld %10ld %10.4f %12.4f\n", c.name.c_str(), c.rejections,
                    c.completed + c.failures, c.proportion, c.avg_runtime_sec);
    }
    std::printf("written: %s %s\n", csv_path.c_str(), json_path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// bbsig power
// ---------------------------------------------------------------------------

struct PowerArgs {
    double delta = 0.0;
    double sigma = 1.0;
    double alpha = 0.05;
    std::string variant = "both";
    bool combined = false;
    int U = 5;
    int q = 3;
    std::string method = "q-order";
};

int run_cmd_power(const PowerArgs& args) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value("1");
    w.key("delta").value(args.delta);
    w.key("sigma").value(args.sigma);
    w.key("alpha").value(args.alpha);
    if (args.variant == "one-split" || args.variant == "both")
        w.key("one_split")
            .value(theoretical_power(args.delta, args.sigma, args.alpha, TestVariant::one_split));
    if (args.variant == "two-split" || args.variant == "both")
        w.key("two_split")
            .value(theoretical_power(args.delta, args.sigma, args.alpha, TestVariant::two_split));
    if (args.combined) {
        const PowerBound method =
            args.method == "hommel" ? PowerBound::hommel : PowerBound::q_order;
        w.key("combined_bound");
        w.begin_object();
        w.key("U").value(args.U);
        w.key("q").value(args.q);
        w.key("method").value(args.method);
        w.key("bound").value(
            combined_power_bound(args.delta, args.sigma, args.alpha, args.U, args.q, method));
        w.end_object();
    }
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-relevance significance tests for blackbox predictors"};
    app.require_subcommand(1);

    TestArgs test_args;
    auto* test_cmd = app.add_subcommand("test", "Run a relevance test on a CSV dataset");
    test_cmd->add_option("--csv", test_args.csv_path, "Input CSV file")->required();
    test_cmd->add_flag("--no-header", test_args.no_header, "CSV has no header row");
    test_cmd->add_option("--response", test_args.response,
                         "Response column (name or 0-based index; default last column)");
    test_cmd->add_flag("--classification", test_args.classification,
                       "Response holds integer class labels");
    test_cmd->add_option("--features", test_args.features,
                         "Hypothesized feature set, e.g. \"0-4,9\" or names")
        ->required();
    test_cmd->add_option("--method", test_args.method, "one-split or two-split")
        ->check(CLI::IsMember({"one-split", "two-split"}));
    test_cmd->add_option("--tuning", test_args.tuning, "adaptive or log-ratio")
        ->check(CLI::IsMember({"adaptive", "log-ratio"}));
    test_cmd->add_option("--loss", test_args.loss, "squared, cross-entropy or zero-one")
        ->check(CLI::IsMember({"squared", "cross-entropy", "zero-one"}));
    test_cmd->add_option("--U", test_args.U, "Number of repeated random splits")
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--combine", test_args.combine,
                         "Combining method when U >= 2 (hommel, bonferroni, q-order:<q>, "
                         "quantile:<g>, median, cauchy, harmonic)");
    test_cmd->add_option("--alpha", test_args.alpha, "Nominal level");
    test_cmd->add_option("--rho", test_args.rho, "Perturbation size in log-ratio mode");
    test_cmd->add_option("--N0", test_args.N0, "Log-ratio minimal sample size");
    test_cmd->add_option("--zeta-grid", test_args.zeta_grid, "Adaptive zeta grid");
    test_cmd->add_option("--rho-grid", test_args.rho_grid, "Adaptive rho grid");
    test_cmd->add_option("--T", test_args.T, "Tuning permutation count");
    test_cmd->add_option("--mask-value", test_args.mask_value, "Masking constant");
    test_cmd->add_option("--hidden", test_args.hidden,
                         "Hidden layer widths, e.g. \"32,16\"; \"none\" = linear");
    test_cmd->add_option("--epochs", test_args.epochs, "SGD epochs");
    test_cmd->add_option("--batch-size", test_args.batch_size, "SGD batch size");
    test_cmd->add_option("--lr", test_args.learning_rate, "SGD learning rate");
    test_cmd->add_option("--validation-split", test_args.validation_split,
                         "Validation fraction for early stopping");
    test_cmd->add_option("--patience", test_args.patience, "Early-stopping patience");
    test_cmd->add_option("--threads", test_args.threads, "Worker cap for the U splits");
    test_cmd->add_option("--seed", test_args.seed, "Seed (wins over BLACKBOX_SIG_SEED)")
        ->each([&](const std::string&) { test_args.seed_given = true; });
    test_cmd->add_option("--save-models", test_args.save_models,
                         "Save the fitted pair as <prefix>_f.json / <prefix>_g.json");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo Type I error and power study");
    sim_cmd->add_option("--example", sim_args.example,
                        "1-6, misspecified, or perturbation-ablation");
    sim_cmd->add_option("--config", sim_args.config_path, "Config JSON (overrides --example)");
    sim_cmd->add_option("--reps", sim_args.reps, "Repetitions per case")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--reps-alt", sim_args.reps_alt, "Repetitions for the power cases");
    sim_cmd->add_option("--N", sim_args.N, "Sample size override");
    sim_cmd->add_option("--d", sim_args.d, "Feature dimension override");
    sim_cmd->add_option("--B", sim_args.B, "Feature magnitude override");
    sim_cmd->add_option("--r", sim_args.r, "Feature correlation override");
    sim_cmd->add_option("--depth", sim_args.depth, "True-network depth override");
    sim_cmd->add_option("--width", sim_args.width, "True-network width override");
    sim_cmd->add_option("--tau", sim_args.tau, "True-network norm scale override");
    sim_cmd->add_option("--s0", sim_args.s0, "Irrelevant block size override");
    sim_cmd->add_option("--noise-sd", sim_args.noise_sd, "Outcome noise sd override");
    sim_cmd->add_option("--method", sim_args.method, "one-split or two-split")
        ->check(CLI::IsMember({"one-split", "two-split"}));
    sim_cmd->add_option("--tuning", sim_args.tuning, "adaptive or log-ratio")
        ->check(CLI::IsMember({"adaptive", "log-ratio"}));
    sim_cmd->add_option("--U", sim_args.U, "Repeated splits per test");
    sim_cmd->add_option("--combine", sim_args.combine, "Combining method");
    sim_cmd->add_option("--alpha", sim_args.alpha, "Nominal level")
        ->each([&](const std::string&) { sim_args.alpha_given = true; });
    sim_cmd->add_option("--seed", sim_args.seed, "Seed (wins over BLACKBOX_SIG_SEED)")
        ->each([&](const std::string&) { sim_args.seed_given = true; });
    sim_cmd->add_option("--threads", sim_args.threads, "Worker cap (0 = all cores)");
    sim_cmd->add_option("--out", sim_args.out_prefix, "Output file prefix");
    sim_cmd->add_flag("--full-scale", sim_args.full_scale,
                      "Paper-scale repetition counts (1000 null / 100 alt)");

    PowerArgs power_args;
    auto* power_cmd = app.add_subcommand("power", "Evaluate the theoretical power formulas");
    power_cmd->add_option("--delta", power_args.delta, "Local alternative size (>= 0)")
        ->required();
    power_cmd->add_option("--sigma", power_args.sigma, "Limiting sd (> 0)");
    power_cmd->add_option("--alpha", power_args.alpha, "Nominal level");
    power_cmd->add_option("--variant", power_args.variant, "one-split, two-split or both")
        ->check(CLI::IsMember({"one-split", "two-split", "both"}));
    power_cmd->add_flag("--combined", power_args.combined, "Also print the combined-test bound");
    power_cmd->add_option("--U", power_args.U, "Splits for the combined bound");
    power_cmd->add_option("--q", power_args.q, "Order statistic for the combined bound");
    power_cmd->add_option("--bound-method", power_args.method, "q-order or hommel")
        ->check(CLI::IsMember({"q-order", "hommel"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*test_cmd) return run_cmd_test(test_args);
        if (*sim_cmd) {
            if (sim_args.example.empty() && sim_args.config_path.empty()) {
                emit_error("bad_input", "simulate needs --example or --config");
                return kExitBadInput;
            }
            return run_cmd_simulate(sim_args);
        }
        if (*power_cmd) return run_cmd_power(power_args);
    } catch (const CsvError& e) {
        emit_error("bad_input", e.what());
        return kExitBadInput;
    } catch (const InvalidFeatureSet& e) {
        emit_error("bad_input", e.what());
        return kExitBadInput;
    } catch (const InvalidConfig& e) {
        emit_error("bad_input", e.what());
        return kExitBadInput;
    } catch (const Error& e) {
        // DegenerateVariance, TrainingDiverged, sample-size failures and the
        // rest of the runtime taxonomy.
        emit_error("runtime", e.what());
        return kExitRuntime;
    }
    return kExitBadInput;
}
