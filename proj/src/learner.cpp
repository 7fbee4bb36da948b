#include "bbsig/learner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bbsig/rng.hpp"

namespace bbsig {

namespace {

void validate_spec(const LearnerSpec& spec) {
    if (spec.epochs < 1) throw InvalidConfig("epochs must be >= 1");
    if (spec.batch_size < 1) throw InvalidConfig("batch_size must be >= 1");
    if (spec.learning_rate < 0.0) throw InvalidConfig("learning_rate must be >= 0");
    if (spec.validation_split < 0.0 || spec.validation_split >= 1.0)
        throw InvalidConfig("validation_split must lie in [0, 1)");
    if (spec.patience < 0) throw InvalidConfig("patience must be >= 0");
    for (int h : spec.hidden)
        if (h < 1) throw InvalidConfig("hidden widths must be >= 1");
}

void check_loss_output(const Loss& loss, OutputKind output, Index k) {
    switch (loss.kind) {
        case LossKind::squared_error:
            if (k != 1) throw LossShapeError("squared_error requires K = 1");
            if (output != OutputKind::identity)
                throw LossShapeError("squared_error requires the identity output");
            break;
        case LossKind::cross_entropy:
        case LossKind::zero_one:
            if (k < 2) throw LossShapeError("classification losses require K >= 2");
            if (output != OutputKind::softmax)
                throw LossShapeError("classification losses require the softmax output");
            break;
    }
}

std::vector<Index> layer_dims(const LearnerSpec& spec, Index d, Index k) {
    std::vector<Index> dims;
    dims.push_back(d);
    for (int h : spec.hidden) dims.push_back(h);
    dims.push_back(k);
    return dims;
}

// Stable softmax over each column.
void softmax_columns(Matrix& z) {
    for (Index c = 0; c < z.cols(); ++c) {
        Vector col = z.col(c);
        col.array() -= col.maxCoeff();
        col = col.array().exp();
        z.col(c) = col / col.sum();
    }
}

// Forward pass on transposed inputs (features x samples), keeping every
// post-activation for backprop. acts[0] is the input block; acts.back() is
// the network output.
std::vector<Matrix> forward_activations(const Predictor& p, const Matrix& xt) {
    std::vector<Matrix> acts;
    acts.reserve(p.weights.size() + 1);
    acts.push_back(xt);
    const std::size_t layers = p.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        Matrix z = (p.weights[l] * acts.back()).colwise() + p.biases[l];
        if (l + 1 < layers) {
            z = z.cwiseMax(0.0);
        } else if (p.spec.output == OutputKind::softmax) {
            softmax_columns(z);
        }
        acts.push_back(std::move(z));
    }
    return acts;
}

// For training, zero_one is evaluated through its cross-entropy surrogate:
// the metric stays zero_one, the gradients come from cross-entropy.
Loss gradient_loss(const Loss& loss) {
    if (loss.kind != LossKind::zero_one) return loss;
    Loss surrogate = loss;
    surrogate.kind = LossKind::cross_entropy;
    return surrogate;
}

struct Snapshot {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
};

}  // namespace

Matrix predict(const Predictor& p, const Matrix& features) {
    if (features.cols() != p.input_dim())
        throw PredictShapeError("input has " + std::to_string(features.cols()) +
                                " columns, predictor expects " + std::to_string(p.input_dim()));
    Matrix h = features.transpose();
    const std::size_t layers = p.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        h = (p.weights[l] * h).colwise() + p.biases[l];
        if (l + 1 < layers) {
            h = h.cwiseMax(0.0);
        } else if (p.spec.output == OutputKind::softmax) {
            softmax_columns(h);
        }
    }
    return h.transpose();
}

double empirical_loss(const Predictor& p, const Matrix& X, const Matrix& Y, const Loss& loss) {
    return loss_rows(loss, predict(p, X), Y).mean();
}

Gradients loss_gradients(const Predictor& p, const Matrix& X, const Matrix& Y, const Loss& loss) {
    if (X.cols() != p.input_dim())
        throw PredictShapeError("gradient input width mismatch");
    if (X.rows() != Y.rows()) throw LossShapeError("feature and outcome row counts differ");
    const Loss gloss = gradient_loss(loss);
    check_loss_output(gloss, p.spec.output, Y.cols());

    const double batch = static_cast<double>(X.rows());
    const auto acts = forward_activations(p, X.transpose());
    const std::size_t layers = p.weights.size();

    // Output-layer gradient of the mean loss with respect to pre-activation:
    // squared error (identity): 2 (pred - y) / B; cross-entropy (softmax):
    // (p - y) / B.
    Matrix g;
    if (gloss.kind == LossKind::squared_error) {
        g = 2.0 * (acts.back() - Y.transpose()) / batch;
    } else {
        g = (acts.back() - Y.transpose()) / batch;
    }

    Gradients out;
    out.w.resize(layers);
    out.b.resize(layers);
    for (std::size_t l = layers; l-- > 0;) {
        out.w[l] = g * acts[l].transpose();
        out.b[l] = g.rowwise().sum();
        if (l > 0) {
            g = (p.weights[l].transpose() * g).array() *
                (acts[l].array() > 0.0).cast<double>();
        }
    }
    return out;
}

Predictor fit(const LearnerSpec& spec, const Matrix& features, const Matrix& outcomes,
              const Loss& loss) {
    validate_spec(spec);
    if (features.rows() != outcomes.rows())
        throw LossShapeError("feature and outcome row counts differ");
    if (features.rows() < 1) throw InvalidConfig("fit needs at least one row");
    check_loss_output(gradient_loss(loss), spec.output, outcomes.cols());

    const Index N = features.rows();
    const Index n_val = static_cast<Index>(std::floor(spec.validation_split * static_cast<double>(N)));
    const Index n_train = N - n_val;
    if (n_train < 1) throw InvalidConfig("no training rows left after validation split");

    const Matrix x_train = features.topRows(n_train);
    const Matrix y_train = outcomes.topRows(n_train);
    const Matrix x_val = features.bottomRows(n_val);
    const Matrix y_val = outcomes.bottomRows(n_val);

    Predictor p;
    p.spec = spec;
    const auto dims = layer_dims(spec, features.cols(), outcomes.cols());
    auto engine = make_engine(spec.seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const Index fan_in = dims[l], fan_out = dims[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> uniform(-bound, bound);
        Matrix w(fan_out, fan_in);
        for (Index i = 0; i < fan_out; ++i)
            for (Index j = 0; j < fan_in; ++j) w(i, j) = uniform(engine);
        p.weights.push_back(std::move(w));
        p.biases.push_back(Vector::Zero(fan_out));
    }

    const Loss gloss = gradient_loss(loss);
    const double lr = spec.learning_rate;

    Snapshot best;
    double best_val = std::numeric_limits<double>::infinity();
    int bad_epochs = 0;

    std::vector<Index> order(static_cast<std::size_t>(n_train));
    std::iota(order.begin(), order.end(), Index{0});

    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        // Fresh shuffle each epoch from the same seeded stream.
        for (Index i = n_train - 1; i > 0; --i) {
            std::uniform_int_distribution<Index> pick(0, i);
            std::swap(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(pick(engine))]);
        }

        for (Index start = 0; start < n_train; start += spec.batch_size) {
            const Index b = std::min<Index>(spec.batch_size, n_train - start);
            Matrix xb(b, x_train.cols());
            Matrix yb(b, y_train.cols());
            for (Index i = 0; i < b; ++i) {
                xb.row(i) = x_train.row(order[static_cast<std::size_t>(start + i)]);
                yb.row(i) = y_train.row(order[static_cast<std::size_t>(start + i)]);
            }
            const Gradients g = loss_gradients(p, xb, yb, gloss);
            for (std::size_t l = 0; l < p.weights.size(); ++l) {
                p.weights[l] -= lr * g.w[l];
                if (spec.bias) p.biases[l] -= lr * g.b[l];
            }
        }

        const double train_loss = empirical_loss(p, x_train, y_train, loss);
        const double val_loss =
            n_val > 0 ? empirical_loss(p, x_val, y_val, loss) : train_loss;
        p.train_log.push_back(train_loss);
        p.val_log.push_back(val_loss);
        if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
            throw TrainingDiverged("non-finite loss at epoch " + std::to_string(epoch + 1),
                                   epoch + 1);

        if (val_loss < best_val) {
            best_val = val_loss;
            best.weights = p.weights;
            best.biases = p.biases;
            p.best_epoch = epoch;
            bad_epochs = 0;
        } else {
            if (++bad_epochs > spec.patience) break;
        }
    }

    p.weights = best.weights;
    p.biases = best.biases;
    return p;
}

std::pair<Predictor, Predictor> fit_pair(const LearnerSpec& spec, const Dataset& estimation,
                                         const FeatureSet& s, const Loss& loss,
                                         double mask_value) {
    if (estimation.rows() < 1) throw InvalidConfig("estimation sample is empty");
    LearnerSpec f_spec = spec;
    LearnerSpec g_spec = spec;
    f_spec.seed = derive_seed(spec.seed, 0xF17);
    g_spec.seed = derive_seed(spec.seed, 0x6F17);

    Predictor f = fit(f_spec, estimation.features, estimation.outcomes, loss);
    const Dataset masked = mask(estimation, s, mask_value);
    Predictor g = fit(g_spec, masked.features, masked.outcomes, loss);
    return {std::move(f), std::move(g)};
}

std::string predictor_to_json(const Predictor& p) {
    nlohmann::json doc;
    doc["schema"] = "1";
    doc["output"] = p.spec.output == OutputKind::softmax ? "softmax" : "identity";
    doc["bias"] = p.spec.bias;
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        nlohmann::json layer;
        layer["rows"] = p.weights[l].rows();
        layer["cols"] = p.weights[l].cols();
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(p.weights[l].size()));
        for (Index i = 0; i < p.weights[l].rows(); ++i)
            for (Index j = 0; j < p.weights[l].cols(); ++j) w.push_back(p.weights[l](i, j));
        layer["weights"] = w;
        layer["bias"] = std::vector<double>(p.biases[l].data(), p.biases[l].data() + p.biases[l].size());
        layers.push_back(std::move(layer));
    }
    doc["layers"] = std::move(layers);
    return doc.dump();
}

Predictor predictor_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("bad predictor document: ") + e.what());
    }
    Predictor p;
    const std::string output = doc.value("output", "identity");
    p.spec.output = output == "softmax" ? OutputKind::softmax : OutputKind::identity;
    p.spec.bias = doc.value("bias", true);
    Index prev_rows = -1;
    for (const auto& layer : doc.at("layers")) {
        const Index rows = layer.at("rows").get<Index>();
        const Index cols = layer.at("cols").get<Index>();
        const auto w = layer.at("weights").get<std::vector<double>>();
        const auto b = layer.at("bias").get<std::vector<double>>();
        if (static_cast<Index>(w.size()) != rows * cols ||
            static_cast<Index>(b.size()) != rows)
            throw InvalidConfig("layer shape does not match weight array length");
        if (prev_rows >= 0 && cols != prev_rows)
            throw InvalidConfig("layer dimensions do not chain");
        prev_rows = rows;
        Matrix wm(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                wm(i, j) = w[static_cast<std::size_t>(i * cols + j)];
        p.weights.push_back(std::move(wm));
        p.biases.push_back(Eigen::Map<const Vector>(b.data(), rows));
    }
    if (p.weights.empty()) throw InvalidConfig("predictor document has no layers");
    p.spec.hidden.clear();
    for (std::size_t l = 0; l + 1 < p.weights.size(); ++l)
        p.spec.hidden.push_back(static_cast<int>(p.weights[l].rows()));
    return p;
}

void save_predictor(const Predictor& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidConfig("cannot write '" + path + "'");
    out << predictor_to_json(p);
}

Predictor load_predictor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return predictor_from_json(buf.str());
}

}  // namespace bbsig
