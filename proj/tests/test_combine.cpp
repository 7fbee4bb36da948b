#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "bbsig/combine.hpp"
#include "bbsig/rng.hpp"

using namespace bbsig;

namespace {

CombineMethod qorder(int q) {
    CombineMethod m;
    m.kind = CombineMethod::Kind::q_order;
    m.q = q;
    return m;
}

CombineMethod kind(CombineMethod::Kind k) {
    CombineMethod m;
    m.kind = k;
    return m;
}

}  // namespace

TEST_CASE("q-order and hommel on the reference inputs") {
    const std::vector<double> p{0.01, 0.02, 0.03, 0.5, 0.9};
    CHECK(combine(p, qorder(3)) == doctest::Approx(0.05).epsilon(1e-14));

    const std::vector<double> p2{0.01, 0.04};
    // C_2 = 1.5; min(2*0.01, 1*0.04) = 0.02; result 0.03.
    CHECK(combine(p2, kind(CombineMethod::Kind::hommel)) == doctest::Approx(0.03).epsilon(1e-14));
}

TEST_CASE("q-order family identities") {
    const std::vector<double> p{0.2, 0.05, 0.6, 0.4, 0.11};
    CHECK(combine(p, qorder(1)) == combine(p, kind(CombineMethod::Kind::bonferroni)));
    CHECK(combine(p, qorder(3)) == combine(p, kind(CombineMethod::Kind::median)));  // ceil(5/2)
    CombineMethod quant = kind(CombineMethod::Kind::quantile);
    quant.gamma = 0.25;  // ceil(1.25) = 2
    CHECK(combine(p, quant) == combine(p, qorder(2)));
    // q = U: factor U/q = 1, so the combined value is the max p-value.
    CHECK(combine(p, qorder(5)) == doctest::Approx(0.6).epsilon(1e-15));
    // Capping at 1.
    const std::vector<double> big{0.5, 0.9, 0.95, 0.99, 1.0};
    CHECK(combine(big, qorder(1)) == 1.0);
}

TEST_CASE("cauchy fixed point and harmonic cap") {
    for (double p : {0.01, 0.2, 0.5, 0.77, 0.99}) {
        const std::vector<double> same{p, p, p, p};
        CHECK(combine(same, kind(CombineMethod::Kind::cauchy)) ==
              doctest::Approx(p).epsilon(1e-10));
    }
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(combine(ones, kind(CombineMethod::Kind::harmonic)) == 1.0);
    CHECK(combine(ones, kind(CombineMethod::Kind::cauchy)) == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(combine(zeros, kind(CombineMethod::Kind::cauchy)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(combine(zeros, kind(CombineMethod::Kind::harmonic)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("combine validates its inputs") {
    CHECK_THROWS_AS(combine({}, kind(CombineMethod::Kind::hommel)), NeedMultiplePValues);
    CHECK_THROWS_AS(combine({0.4}, kind(CombineMethod::Kind::hommel)), NeedMultiplePValues);
    CHECK_THROWS_AS(combine({0.4, 1.2}, kind(CombineMethod::Kind::hommel)), InvalidPValue);
    CHECK_THROWS_AS(combine({-0.1, 0.2}, kind(CombineMethod::Kind::hommel)), InvalidPValue);
    CHECK_THROWS_AS(combine({0.1, 0.2}, qorder(3)), InvalidConfig);
    CHECK_THROWS_AS(combine({0.1, 0.2}, qorder(0)), InvalidConfig);
}

TEST_CASE("monotonicity and permutation invariance across methods") {
    const std::vector<CombineMethod> methods{
        qorder(2),
        kind(CombineMethod::Kind::hommel),
        kind(CombineMethod::Kind::bonferroni),
        kind(CombineMethod::Kind::median),
        kind(CombineMethod::Kind::quantile),
        kind(CombineMethod::Kind::cauchy),
        kind(CombineMethod::Kind::harmonic),
    };
    auto engine = make_engine(2024);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> p(5);
        for (auto& v : p) v = uniform(engine);
        std::uniform_int_distribution<int> pick(0, 4);
        const int bump = pick(engine);
        std::vector<double> higher = p;
        higher[bump] = higher[bump] + (1.0 - higher[bump]) * uniform(engine);

        std::vector<double> shuffled = p;
        std::shuffle(shuffled.begin(), shuffled.end(), engine);

        for (const auto& m : methods) {
            const double base = combine(p, m);
            CHECK(base >= 0.0);
            CHECK(base <= 1.0);
            CHECK(combine(higher, m) >= base - 1e-12);
            CHECK(combine(shuffled, m) == doctest::Approx(base).epsilon(1e-14));
        }
    }
}

TEST_CASE("hommel level control under iid uniforms") {
    // 20000 Monte-Carlo draws of U = 5 uniforms; the rejection rate at
    // alpha = 0.05 must stay below 0.055.
    auto engine = make_engine(555);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    int rejections = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        std::vector<double> p(5);
        for (auto& v : p) v = uniform(engine);
        if (combine(p, kind(CombineMethod::Kind::hommel)) <= 0.05) ++rejections;
    }
    CHECK(static_cast<double>(rejections) / draws <= 0.055);
}

TEST_CASE("combine method parsing") {
    CHECK(CombineMethod::parse("hommel").kind == CombineMethod::Kind::hommel);
    CHECK(CombineMethod::parse("q-order:3").q == 3);
    CHECK(CombineMethod::parse("quantile:0.25").gamma == doctest::Approx(0.25));
    CHECK(CombineMethod::parse("harmonic").name() == "harmonic");
    CHECK(CombineMethod::parse("q-order:3").name() == "q-order:3");
    CHECK_THROWS_AS(CombineMethod::parse("fisher"), InvalidConfig);
    CHECK_THROWS_AS(CombineMethod::parse("q-order"), InvalidConfig);
    CHECK_THROWS_AS(CombineMethod::parse("quantile:1.5"), InvalidConfig);
}
