#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bbsig/dataset.hpp"
#include "bbsig/runner.hpp"

namespace bbsig {

// Synthetic regression design: X ~ N(0, B Sigma) with Sigma_ij = r^|i-j|,
// outcome from a random ReLU network that ignores the first s0_size features.
struct SimConfig {
    Index N = 1000;
    int d = 20;
    double B = 0.4;
    double r = 0.25;
    int depth = 2;  // true-network depth L
    int width = 16; // hidden width
    double tau = 2.0;
    int s0_size = 5;
    double noise_sd = 1.0;
    std::uint64_t seed = 0;
    // Partial-observation variant: Sigma has unit diagonal with 0.1 in the
    // first row/column, and only the first floor(d (1 - 1/log N)) feature
    // columns are observed.
    bool partial_observation = false;
};

Matrix ar_covariance(int d, double r, double B);

// The random true network behind gen_network_regression for a given config:
// column norms are tau / sqrt(fan_in), the first-layer columns in S0 are
// zeroed, ReLU applies after every layer including the output.
std::vector<Matrix> true_network_weights(const SimConfig& cfg);
Vector true_network_eval(const std::vector<Matrix>& weights, const Matrix& x);

// Returns the dataset and the irrelevant index set S0 = {0, ..., s0_size-1}.
std::pair<Dataset, FeatureSet> gen_network_regression(const SimConfig& cfg);

// Mean function of the misspecified design on a d=10 row (0-based):
//   0.1 x5 + 0.2 x6^2 + 0.3 x7^3 + 0.4 x8 x9.
double misspecified_mean(const Vector& x);

// X ~ N(0, I_10), Y = misspecified_mean(X) + 0.3 eps. Returns the three
// hypothesis sets: "null" = {0..4} (true H0), "mixed" = {2..6}, and
// "active" = {5,6,7}.
std::pair<Dataset, std::map<std::string, FeatureSet>> gen_misspecified(Index N,
                                                                       std::uint64_t seed);

// The four hypothesized windows (0-based, each of size s0_size): (i) at 0,
// (ii) at floor(s0/2), (iii) at floor(d/2), (iv) at d - s0.
std::array<FeatureSet, 4> hypothesized_sets(int s0_size, int d);

struct CaseRate {
    std::string name;
    long rejections = 0;
    long completed = 0;
    long failures = 0;
    double proportion = 0.0;
    double avg_runtime_sec = 0.0;
};

struct RateReport {
    double type1 = 0.0;          // null-true case
    std::vector<double> powers;  // remaining cases in order
    std::vector<CaseRate> cases;
    double avg_runtime_sec = 0.0;
};

struct ExperimentConfig {
    std::string design = "network";  // network | misspecified | partial-observation
    SimConfig sim;
    TestOptions test;
    int reps_null = 200;
    int reps_alt = 100;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = all hardware threads
};

// Monte-Carlo rejection rates: the configured test run end-to-end on
// independently generated datasets per hypothesis case. Individual rep
// failures are counted, never silently dropped.
RateReport estimate_rates(const ExperimentConfig& cfg);

std::string rates_csv(const ExperimentConfig& cfg, const RateReport& report);
std::string rates_json(const ExperimentConfig& cfg, const RateReport& report);

// Stable hash of the experiment configuration, for output provenance.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace bbsig
