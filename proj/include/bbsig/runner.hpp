#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbsig/adaptive.hpp"
#include "bbsig/combine.hpp"
#include "bbsig/stats.hpp"

namespace bbsig {

enum class TuningMode { adaptive, log_ratio, fixed };

// Everything the full test pipeline needs: tuning scheme, number of repeated
// splits, combiner, learner and loss.
struct TestOptions {
    TestVariant variant = TestVariant::one_split;
    TuningMode tuning = TuningMode::adaptive;
    TuneGrid grid;               // adaptive mode
    Index N0 = 1000;             // log-ratio minimal sample size
    double log_ratio_rho = 0.01; // perturbation size in log-ratio mode
    double fixed_zeta = 0.2;     // fixed mode: no tuning at all
    double fixed_rho = 0.0;
    int U = 5;
    CombineMethod combine{};     // applied when U >= 2
    LearnerSpec learner;
    Loss loss;
    double alpha = 0.05;
    double mask_value = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;  // fits across the U splits may run concurrently
};

struct RunResult {
    double p_value = 1.0;
    std::vector<TestResult> splits;  // one per repeated split
    double rho = 0.0;
    double zeta = 0.0;  // m / N
    Index n = 0;
    Index m = 0;
    int U = 1;
    std::string combine_name;  // empty when U == 1
    TuneResult tune;           // filled in adaptive mode
    bool tuned = false;
    std::uint64_t seed = 0;
};

// The full pipeline: tune (or log-ratio sizes), U repeated seeded splits,
// fit pairs, statistics, combined p-value when U >= 2.
RunResult run_test(const Dataset& data, const FeatureSet& s, const TestOptions& opt);

}  // namespace bbsig
