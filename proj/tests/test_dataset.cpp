#include <doctest.h>

#include <cmath>
#include <limits>

#include "bbsig/dataset.hpp"
#include "bbsig/rng.hpp"

using namespace bbsig;

TEST_CASE("mask zeroes exactly the S columns") {
    Dataset data;
    data.features.resize(2, 2);
    data.features << 1.0, 2.0, 3.0, 4.0;
    data.outcomes.resize(2, 1);
    data.outcomes << 5.0, 6.0;

    const FeatureSet s = FeatureSet::of({0});
    const Dataset masked = mask(data, s);
    CHECK(masked.features(0, 0) == 0.0);
    CHECK(masked.features(1, 0) == 0.0);
    CHECK(masked.features(0, 1) == 2.0);
    CHECK(masked.features(1, 1) == 4.0);
    CHECK(masked.outcomes == data.outcomes);
    CHECK(data.features(0, 0) == 1.0);  // input untouched

    // Idempotence and the full mask.
    CHECK(mask(masked, s).features == masked.features);
    const Dataset all = mask(data, FeatureSet::of({0, 1}));
    CHECK(all.features.isZero(0.0));

    // Configurable masking constant.
    const Dataset c = mask(data, s, -2.5);
    CHECK(c.features(0, 0) == -2.5);
    CHECK(c.features(1, 0) == -2.5);
}

TEST_CASE("mask leaves the complement bitwise unchanged") {
    Dataset data;
    data.features = Matrix::Random(30, 7);
    data.outcomes = Matrix::Random(30, 1);
    const FeatureSet s = FeatureSet::of({1, 4, 5});
    const Dataset masked = mask(data, s);
    for (int j : {0, 2, 3, 6})
        CHECK(masked.features.col(j) == data.features.col(j));
}

TEST_CASE("mask rejects out-of-range indices") {
    Dataset data;
    data.features = Matrix::Zero(3, 2);
    data.outcomes = Matrix::Zero(3, 1);
    CHECK_THROWS_AS(mask(data, FeatureSet::of({2}), 0.0), InvalidFeatureSet);
}

TEST_CASE("FeatureSet factory normalizes and validates") {
    const FeatureSet s = FeatureSet::of({9, 0, 4});
    CHECK(s.indices == std::vector<int>{0, 4, 9});
    CHECK_THROWS_AS(FeatureSet::of({}), InvalidFeatureSet);
    CHECK_THROWS_AS(FeatureSet::of({1, 1}), InvalidFeatureSet);
    CHECK_THROWS_AS(FeatureSet::of({-1}), InvalidFeatureSet);
}

TEST_CASE("parse_feature_set grammar") {
    const FeatureSet s = parse_feature_set("0-4,9", 12);
    CHECK(s.indices == std::vector<int>{0, 1, 2, 3, 4, 9});

    const std::vector<std::string> names{"age", "height", "weight"};
    const FeatureSet byname = parse_feature_set("weight,age", 3, names);
    CHECK(byname.indices == std::vector<int>{0, 2});

    CHECK_THROWS_AS(parse_feature_set("0-20", 10), InvalidFeatureSet);
    CHECK_THROWS_AS(parse_feature_set("salary", 3, names), InvalidFeatureSet);
    CHECK_THROWS_AS(parse_feature_set("3-1", 10), InvalidFeatureSet);
    CHECK_THROWS_AS(parse_feature_set("", 10), InvalidFeatureSet);
}

TEST_CASE("loss_eval on the reference points") {
    const Loss squared{LossKind::squared_error, 1e-12};
    Vector p1(1), y1(1);
    p1 << 2.0;
    y1 << 2.0;
    CHECK(loss_eval(squared, p1, y1) == 0.0);
    p1 << 1.0;
    y1 << 3.0;
    CHECK(loss_eval(squared, p1, y1) == 4.0);

    const Loss ce{LossKind::cross_entropy, 1e-12};
    Vector p2(2), y2(2);
    p2 << 0.5, 0.5;
    y2 << 1.0, 0.0;  // class 0
    CHECK(loss_eval(ce, p2, y2) == doctest::Approx(-std::log(0.5)).epsilon(1e-12));

    // Clamping bound: never exceeds -log(clamp_epsilon).
    p2 << 0.0, 1.0;
    CHECK(loss_eval(ce, p2, y2) <= -std::log(1e-12) + 1e-9);
    CHECK(std::isfinite(loss_eval(ce, p2, y2)));

    const Loss zo{LossKind::zero_one, 1e-12};
    p2 << 0.7, 0.3;
    CHECK(loss_eval(zo, p2, y2) == 0.0);
    p2 << 0.3, 0.7;
    CHECK(loss_eval(zo, p2, y2) == 1.0);
}

TEST_CASE("loss shape validation") {
    const Loss squared{LossKind::squared_error, 1e-12};
    Vector p(2), y(2);
    p << 0.5, 0.5;
    y << 1.0, 0.0;
    CHECK_THROWS_AS(loss_eval(squared, p, y), LossShapeError);  // K must be 1

    const Loss ce{LossKind::cross_entropy, 1e-12};
    Vector p1(1), y1(1);
    p1 << 1.0;
    y1 << 1.0;
    CHECK_THROWS_AS(loss_eval(ce, p1, y1), LossShapeError);  // K must be >= 2

    Vector y3(3);
    y3 << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(loss_eval(ce, p, y3), LossShapeError);  // mismatched K

    Loss bad_eps{LossKind::cross_entropy, 1e-3};
    CHECK_THROWS_AS(loss_eval(bad_eps, p, y), InvalidConfig);
}

TEST_CASE("dataset validation catches the invariant breaches") {
    Dataset data;
    data.features = Matrix::Zero(3, 2);
    data.outcomes = Matrix::Zero(3, 1);
    CHECK_NOTHROW(validate(data));

    Dataset short_outcomes = data;
    short_outcomes.outcomes = Matrix::Zero(2, 1);
    CHECK_THROWS_AS(validate(short_outcomes), InvalidConfig);

    Dataset with_nan = data;
    with_nan.features(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(with_nan), InvalidConfig);

    Dataset with_inf = data;
    with_inf.outcomes(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(with_inf), InvalidConfig);

    Dataset one_row;
    one_row.features = Matrix::Zero(1, 2);
    one_row.outcomes = Matrix::Zero(1, 1);
    CHECK_THROWS_AS(validate(one_row), InvalidConfig);
}
