#include "bbsig/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace bbsig {

void validate(const Dataset& data) {
    if (data.features.rows() != data.outcomes.rows())
        throw InvalidConfig("feature and outcome row counts differ");
    if (data.dim() < 1) throw InvalidConfig("dataset needs at least one feature column");
    if (data.rows() < 2) throw InvalidConfig("dataset needs at least two rows");
    if (data.outcome_dim() < 1) throw InvalidConfig("dataset needs an outcome column");
    if (!data.features.allFinite() || !data.outcomes.allFinite())
        throw InvalidConfig("dataset contains non-finite values");
    if (!data.column_names.empty() &&
        static_cast<Index>(data.column_names.size()) != data.dim())
        throw InvalidConfig("column_names size does not match feature dimension");
}

FeatureSet FeatureSet::of(std::vector<int> indices) {
    if (indices.empty()) throw InvalidFeatureSet("feature set must be non-empty");
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw InvalidFeatureSet("feature set contains duplicate indices");
    if (indices.front() < 0) throw InvalidFeatureSet("feature index is negative");
    return FeatureSet{std::move(indices)};
}

void validate_feature_set(const FeatureSet& s, Index d) {
    if (s.indices.empty()) throw InvalidFeatureSet("feature set must be non-empty");
    for (int i : s.indices)
        if (i < 0 || i >= d)
            throw InvalidFeatureSet("feature index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(d) + ")");
}

namespace {

bool all_digits(const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
}

std::string trim(const std::string& t) {
    auto b = t.find_first_not_of(" \t");
    auto e = t.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return t.substr(b, e - b + 1);
}

int resolve_column(const std::string& token, Index d, const std::vector<std::string>& names) {
    if (all_digits(token)) return std::stoi(token);
    auto it = std::find(names.begin(), names.end(), token);
    if (it == names.end())
        throw InvalidFeatureSet("unknown feature column '" + token + "'");
    return static_cast<int>(it - names.begin());
}

}  // namespace

FeatureSet parse_feature_set(const std::string& text, Index d,
                             const std::vector<std::string>& names) {
    std::vector<int> indices;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) throw InvalidFeatureSet("empty token in feature selection");
        // A range "a-b" only when both sides are plain indices; names may
        // legitimately contain '-'.
        auto dash = token.find('-');
        if (dash != std::string::npos && dash > 0 && all_digits(token.substr(0, dash)) &&
            all_digits(token.substr(dash + 1))) {
            int lo = std::stoi(token.substr(0, dash));
            int hi = std::stoi(token.substr(dash + 1));
            if (hi < lo) throw InvalidFeatureSet("descending range '" + token + "'");
            for (int i = lo; i <= hi; ++i) indices.push_back(i);
        } else {
            indices.push_back(resolve_column(token, d, names));
        }
    }
    FeatureSet s = FeatureSet::of(std::move(indices));
    validate_feature_set(s, d);
    return s;
}

Dataset mask(const Dataset& data, const FeatureSet& s, double mask_value) {
    validate_feature_set(s, data.dim());
    Dataset out = data;
    for (int j : s.indices) out.features.col(j).setConstant(mask_value);
    return out;
}

namespace {

void check_loss_shapes(const Loss& loss, Index k_pred, Index k_out) {
    if (k_pred != k_out)
        throw LossShapeError("prediction and outcome dimensions differ (" +
                             std::to_string(k_pred) + " vs " + std::to_string(k_out) + ")");
    switch (loss.kind) {
        case LossKind::squared_error:
            if (k_pred != 1) throw LossShapeError("squared_error requires K = 1");
            break;
        case LossKind::cross_entropy:
        case LossKind::zero_one:
            if (k_pred < 2)
                throw LossShapeError("classification losses require K >= 2");
            break;
    }
    if (loss.kind == LossKind::cross_entropy &&
        (loss.clamp_epsilon <= 0.0 || loss.clamp_epsilon > 1e-6))
        throw InvalidConfig("clamp_epsilon must lie in (0, 1e-6]");
}

}  // namespace

Vector loss_rows(const Loss& loss, const Matrix& predictions, const Matrix& outcomes) {
    if (predictions.rows() != outcomes.rows())
        throw LossShapeError("prediction and outcome row counts differ");
    check_loss_shapes(loss, predictions.cols(), outcomes.cols());

    const Index n = predictions.rows();
    switch (loss.kind) {
        case LossKind::squared_error:
            return (predictions.col(0) - outcomes.col(0)).array().square();
        case LossKind::cross_entropy: {
            const double eps = loss.clamp_epsilon;
            Matrix clamped = predictions.array().max(eps).min(1.0 - eps);
            return -(outcomes.array() * clamped.array().log()).rowwise().sum();
        }
        case LossKind::zero_one: {
            Vector out(n);
            for (Index i = 0; i < n; ++i) {
                Index pred_class, true_class;
                predictions.row(i).maxCoeff(&pred_class);
                outcomes.row(i).maxCoeff(&true_class);
                out[i] = pred_class == true_class ? 0.0 : 1.0;
            }
            return out;
        }
    }
    throw LossShapeError("unknown loss kind");
}

double loss_eval(const Loss& loss, const Vector& prediction, const Vector& outcome) {
    Matrix p = prediction.transpose();
    Matrix y = outcome.transpose();
    return loss_rows(loss, p, y)[0];
}

}  // namespace bbsig
