#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bbsig/dataset.hpp"

namespace bbsig {

enum class OutputKind { identity, softmax };

// Trainable blackbox configuration: an SGD-fit ReLU multilayer perceptron,
// or a linear model when `hidden` is empty.
struct LearnerSpec {
    std::vector<int> hidden;  // hidden layer widths; empty = linear model
    OutputKind output = OutputKind::identity;
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 0.01;
    double validation_split = 0.2;  // in [0, 1); last fraction of rows held out
    int patience = 10;              // early stopping; stop after patience+1 bad epochs
    std::uint64_t seed = 0;
    bool bias = true;  // set false for the bias-free network form
};

struct Predictor {
    std::vector<Matrix> weights;  // weights[l] maps layer l to layer l+1
    std::vector<Vector> biases;
    LearnerSpec spec;
    std::vector<double> train_log;  // per-epoch training loss
    std::vector<double> val_log;    // per-epoch validation loss
    int best_epoch = 0;             // epoch whose weights were restored (0-based)

    Index input_dim() const { return weights.empty() ? 0 : weights.front().cols(); }
    Index output_dim() const { return weights.empty() ? 0 : weights.back().rows(); }
};

struct Gradients {
    std::vector<Matrix> w;
    std::vector<Vector> b;
};

// Mini-batch SGD with early stopping on validation loss (best weights
// restored). Deterministic given spec.seed. Throws TrainingDiverged when a
// non-finite loss shows up. zero_one losses train on the cross-entropy
// surrogate while the zero_one metric drives early stopping.
Predictor fit(const LearnerSpec& spec, const Matrix& features, const Matrix& outcomes,
              const Loss& loss);

// Forward pass; N x K output, softmax rows sum to 1.
Matrix predict(const Predictor& p, const Matrix& features);

// Fits one predictor on raw features and one on mask(estimation, s); the two
// fits use independent seeds derived from spec.seed.
std::pair<Predictor, Predictor> fit_pair(const LearnerSpec& spec, const Dataset& estimation,
                                         const FeatureSet& s, const Loss& loss,
                                         double mask_value = 0.0);

// Mean of loss_rows(predict(p, X), Y); the quantity SGD minimizes.
double empirical_loss(const Predictor& p, const Matrix& X, const Matrix& Y, const Loss& loss);

// Analytic gradient of empirical_loss with respect to all weights and
// biases. This is the SGD inner step and the target of the finite-difference
// checks.
Gradients loss_gradients(const Predictor& p, const Matrix& X, const Matrix& Y, const Loss& loss);

// Weights as a JSON document (layer shapes + row-major arrays) for reuse
// across CLI invocations.
std::string predictor_to_json(const Predictor& p);
Predictor predictor_from_json(const std::string& text);
void save_predictor(const Predictor& p, const std::string& path);
Predictor load_predictor(const std::string& path);

}  // namespace bbsig
