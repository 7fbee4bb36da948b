#pragma once

#include <string>
#include <vector>

#include "bbsig/types.hpp"

namespace bbsig {

// Feature matrix paired with outcomes. Outcomes are N x 1 for regression and
// N x K one-hot for classification (integer labels are converted at
// ingestion).
struct Dataset {
    Matrix features;                        // N x d
    Matrix outcomes;                        // N x K
    std::vector<std::string> column_names;  // empty, or one name per feature column

    Index rows() const { return features.rows(); }
    Index dim() const { return features.cols(); }
    Index outcome_dim() const { return outcomes.cols(); }
};

// Checks the Dataset invariants: equal row counts, all values finite,
// d >= 1, N >= 2. Throws InvalidConfig.
void validate(const Dataset& data);

// The hypothesized index set S. Indices are 0-based, strictly increasing and
// unique; the set is non-empty.
struct FeatureSet {
    std::vector<int> indices;

    // Sorts and validates; duplicates or negative entries are rejected.
    static FeatureSet of(std::vector<int> indices);
    int size() const { return static_cast<int>(indices.size()); }
};

// Bounds check against a feature dimension d. Throws InvalidFeatureSet.
void validate_feature_set(const FeatureSet& s, Index d);

// Grammar: comma-separated indices and inclusive ranges ("0-4,9"), or column
// names when `names` is non-empty.
FeatureSet parse_feature_set(const std::string& text, Index d,
                             const std::vector<std::string>& names = {});

enum class LossKind { squared_error, cross_entropy, zero_one };

struct Loss {
    LossKind kind = LossKind::squared_error;
    double clamp_epsilon = 1e-12;  // probability floor for cross_entropy
};

// Copy of `data` with the S columns replaced by `mask_value` (0 by default);
// outcomes untouched.
Dataset mask(const Dataset& data, const FeatureSet& s, double mask_value = 0.0);

// Pointwise loss. squared_error requires K = 1; cross_entropy and zero_one
// require K >= 2 with one-hot outcomes. cross_entropy clamps probabilities
// into [clamp_epsilon, 1 - clamp_epsilon] before the log.
double loss_eval(const Loss& loss, const Vector& prediction, const Vector& outcome);

// Per-row losses for an N x K prediction matrix.
Vector loss_rows(const Loss& loss, const Matrix& predictions, const Matrix& outcomes);

}  // namespace bbsig
