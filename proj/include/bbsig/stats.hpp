#pragma once

#include <cstdint>
#include <string>

#include "bbsig/dataset.hpp"
#include "bbsig/learner.hpp"

namespace bbsig {

// Perturbation for the one-split statistic: rho * eps_j with eps_j iid
// N(0,1) from noise_seed. The noise stream is independent of the
// split/shuffle streams.
struct PerturbSpec {
    double rho = 0.0;
    std::uint64_t noise_seed = 0;
};

enum class TestVariant { one_split, two_split };

// Configuration echo carried inside a TestResult.
struct TestConfig {
    double rho = 0.0;
    double zeta = 0.0;
    Index n = 0;
    Index m = 0;
    int U = 1;
    std::string combine;
    std::uint64_t seed = 0;
};

struct TestResult {
    double statistic = 0.0;  // Lambda
    double p_value = 1.0;    // Phi(Lambda)
    double delta_mean = 0.0;
    double delta_sd = 0.0;  // sample sd, denominator m-1
    Index m_used = 0;       // number of loss differences entering the statistic
    TestConfig config;
};

// Lambda = sum(deltas) / (sqrt(m) * sd), p = Phi(Lambda). Needs m >= 2;
// throws DegenerateVariance when the sample sd is exactly zero.
TestResult statistic_from_deltas(const Vector& deltas);

// One-split statistic from precomputed loss differences (the synthetic-delta
// path used by the null-distribution and power studies).
TestResult one_split_from_deltas(const Vector& raw_deltas, const PerturbSpec& perturb);

// delta_j = l(f(X_j), Y_j) - l(g(Z_j), Y_j) + rho * eps_j over the inference
// sample, Z = mask(inference, s).
TestResult one_split_statistic(const Predictor& f_hat, const Predictor& g_hat,
                               const Dataset& inference, const FeatureSet& s, const Loss& loss,
                               const PerturbSpec& perturb, double mask_value = 0.0);

// Splits the inference sample into the first and last floor(m/2) rows (odd
// middle row dropped), pairs them by position, no perturbation. Needs m >= 4.
TestResult two_split_statistic(const Predictor& f_hat, const Predictor& g_hat,
                               const Dataset& inference, const FeatureSet& s, const Loss& loss,
                               double mask_value = 0.0);

// Limiting power under the local alternative: Phi(delta/sigma - z_alpha) for
// the one-split test, Phi(delta/(sqrt(2) sigma) - z_alpha) for the two-split.
double theoretical_power(double delta, double sigma, double alpha, TestVariant variant);

enum class PowerBound { q_order, hommel };

// Lower bound on the power of the combined test with U splits:
//   Gamma(q) = Phi(-x) + sqrt((q-1)/(U-q+1)) *
//              (Phi(x) - Phi(x)^2 - 2 T(-x, sqrt(3)/3))^{1/2},  x = delta/(sqrt(2) sigma)
// q_order: 1 - min(U Gamma(q) / (alpha q), 1);
// hommel:  1 - min_q min(C_U U Gamma(q) / (alpha q), 1), C_U = sum_{q<=U} 1/q.
double combined_power_bound(double delta, double sigma, double alpha, int U, int q,
                            PowerBound method);

}  // namespace bbsig
