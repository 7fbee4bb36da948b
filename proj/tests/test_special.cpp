#include <doctest.h>

#include <cmath>

#include "bbsig/special.hpp"
#include "testutil.hpp"

using namespace bbsig;

TEST_CASE("normal_cdf basics") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-10));

    for (double x : {-8.0, -3.5, -1.0, -0.1, 0.0, 0.3, 1.2, 2.5, 6.0}) {
        CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(normal_cdf(x) - testutil::normal_cdf_oracle(x)) < 1e-14);
    }
}

TEST_CASE("normal_quantile inverts normal_cdf") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    for (double p : {1e-10, 1e-4, 0.01, 0.05, 0.3, 0.5, 0.77, 0.95, 0.999, 1.0 - 1e-10}) {
        CHECK(std::fabs(normal_cdf(normal_quantile(p)) - p) < 1e-14);
    }
    CHECK(std::isinf(normal_quantile(0.0)));
    CHECK(std::isinf(normal_quantile(1.0)));
}

TEST_CASE("owens_t special values") {
    for (double h : {0.0, 0.3, 1.0, 2.7, 9.0}) CHECK(owens_t(h, 0.0) == 0.0);
    // h = 0 reduces to atan(a)/(2 pi); T(0, 1) = 1/8.
    CHECK(std::fabs(owens_t(0.0, 1.0) - 0.125) < 1e-14);
    CHECK(owens_t(0.0, 0.4) == doctest::Approx(std::atan(0.4) / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("owens_t matches the quadrature oracle") {
    CHECK(std::fabs(owens_t(1.5, 0.7) - testutil::owens_t_quadrature(1.5, 0.7)) < 1e-12);

    for (double h : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        for (double a : {0.05, 0.25, 0.5, 0.75, 1.0}) {
            CAPTURE(h);
            CAPTURE(a);
            CHECK(std::fabs(owens_t(h, a) - testutil::owens_t_quadrature(h, a)) < 1e-10);
        }
    }
    // Reduction branch for a > 1.
    for (double a : {1.5, 2.5, 7.0}) {
        CHECK(std::fabs(owens_t(0.8, a) - testutil::owens_t_quadrature(0.8, a)) < 1e-10);
    }
}

TEST_CASE("owens_t symmetries") {
    for (double h : {0.1, 0.7, 1.9, 3.3}) {
        for (double a : {0.2, 0.9, 1.7}) {
            CHECK(owens_t(h, a) == owens_t(-h, a));   // even in h
            CHECK(owens_t(h, -a) == -owens_t(h, a));  // odd in a
        }
    }
    // Large-h limit vanishes.
    CHECK(std::fabs(owens_t(40.0, 1.0)) < 1e-15);
}
