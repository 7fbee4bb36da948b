#include "bbsig/special.hpp"

#include <cmath>
#include <limits>

namespace bbsig {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTwoPi = 6.283185307179586;

// Owen's series for 0 <= a <= 1:
//   T(h, a) = atan(a)/2pi
//             - (1/2pi) sum_k (-1)^k a^{2k+1}/(2k+1) P[Pois(h^2/2) >= k+1].
// The Poisson tail decays factorially past k ~ h^2/2, so a couple hundred
// terms cover every h this function accepts.
double owens_t_core(double h, double a) {
    const double lambda = 0.5 * h * h;
    // T(h, a) <= atan(a)/2pi * exp(-lambda) < 1e-18 beyond this point.
    if (lambda > 40.0) return 0.0;

    double pmf = std::exp(-lambda);  // P[Pois(lambda) = k]
    double cdf = pmf;                // P[Pois(lambda) <= k]
    double apow = a;                 // a^{2k+1}
    double sign = 1.0;
    double sum = 0.0;
    const int kmax = 260;
    for (int k = 0; k < kmax; ++k) {
        const double tail = std::max(0.0, 1.0 - cdf);
        const double magnitude = apow / (2.0 * k + 1.0) * tail;
        sum += sign * magnitude;
        if (magnitude < 1e-18 && k > lambda) break;
        pmf *= lambda / (k + 1.0);
        cdf += pmf;
        apow *= a * a;
        sign = -sign;
    }
    return std::atan(a) / kTwoPi - sum / kTwoPi;
}

}  // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();

    // Acklam's rational approximation, then one Halley refinement against
    // normal_cdf brings the result to near machine precision.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley step on Phi(x) - p = 0.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(kTwoPi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

double owens_t(double h, double a) {
    h = std::fabs(h);  // T is even in h
    const double sign = a < 0.0 ? -1.0 : 1.0;  // and odd in a
    a = std::fabs(a);
    if (a == 0.0) return 0.0;
    if (a <= 1.0) return sign * owens_t_core(h, a);

    const double ah = a * h;
    const double t = 0.5 * (normal_cdf(h) + normal_cdf(ah)) - normal_cdf(h) * normal_cdf(ah) -
                     owens_t_core(ah, 1.0 / a);
    return sign * t;
}

}  // namespace bbsig
