#include "bbsig/combine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bbsig {

CombineMethod CombineMethod::parse(const std::string& text) {
    CombineMethod m;
    const auto colon = text.find(':');
    const std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);

    if (head == "hommel") {
        m.kind = Kind::hommel;
    } else if (head == "bonferroni") {
        m.kind = Kind::bonferroni;
    } else if (head == "median") {
        m.kind = Kind::median;
    } else if (head == "cauchy") {
        m.kind = Kind::cauchy;
    } else if (head == "harmonic") {
        m.kind = Kind::harmonic;
    } else if (head == "q-order" || head == "q_order") {
        m.kind = Kind::q_order;
        if (arg.empty()) throw InvalidConfig("q-order needs a q, e.g. q-order:3");
        m.q = std::stoi(arg);
    } else if (head == "quantile") {
        m.kind = Kind::quantile;
        if (!arg.empty()) m.gamma = std::stod(arg);
        if (m.gamma <= 0.0 || m.gamma >= 1.0)
            throw InvalidConfig("quantile gamma must lie in (0, 1)");
    } else {
        throw InvalidConfig("unknown combine method '" + text + "'");
    }
    return m;
}

std::string CombineMethod::name() const {
    switch (kind) {
        case Kind::hommel: return "hommel";
        case Kind::bonferroni: return "bonferroni";
        case Kind::median: return "median";
        case Kind::cauchy: return "cauchy";
        case Kind::harmonic: return "harmonic";
        case Kind::q_order: return "q-order:" + std::to_string(q);
        case Kind::quantile: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "quantile:%g", gamma);
            return buf;
        }
    }
    return "?";
}

namespace {

double q_order_combine(const std::vector<double>& sorted, int q) {
    const int u = static_cast<int>(sorted.size());
    if (q < 1 || q > u)
        throw InvalidConfig("q = " + std::to_string(q) + " outside [1, U] with U = " +
                            std::to_string(u));
    const double value = static_cast<double>(u) / static_cast<double>(q) *
                         sorted[static_cast<std::size_t>(q - 1)];
    return std::min(value, 1.0);
}

}  // namespace

double combine(const std::vector<double>& pvalues, const CombineMethod& method) {
    const int u = static_cast<int>(pvalues.size());
    if (u < 2) throw NeedMultiplePValues("combining needs at least two p-values");
    for (double p : pvalues)
        if (!(p >= 0.0 && p <= 1.0))
            throw InvalidPValue("p-value outside [0, 1]: " + std::to_string(p));

    std::vector<double> sorted = pvalues;
    std::sort(sorted.begin(), sorted.end());

    switch (method.kind) {
        case CombineMethod::Kind::q_order:
            return q_order_combine(sorted, method.q);
        case CombineMethod::Kind::bonferroni:
            return q_order_combine(sorted, 1);
        case CombineMethod::Kind::median:
            return q_order_combine(sorted, (u + 1) / 2);
        case CombineMethod::Kind::quantile:
            return q_order_combine(
                sorted, static_cast<int>(std::ceil(method.gamma * static_cast<double>(u))));
        case CombineMethod::Kind::hommel: {
            double c_u = 0.0;
            double best = 1.0;
            for (int q = 1; q <= u; ++q) {
                c_u += 1.0 / static_cast<double>(q);
                best = std::min(best, static_cast<double>(u) / static_cast<double>(q) *
                                          sorted[static_cast<std::size_t>(q - 1)]);
            }
            return std::min(c_u * best, 1.0);
        }
        case CombineMethod::Kind::cauchy: {
            // Standard Cauchy combination: average the tangent transforms,
            // then map back through the Cauchy CDF.
            double sum = 0.0;
            for (double p : pvalues) {
                const double clamped = std::min(std::max(p, 1e-300), 1.0 - 1e-16);
                sum += std::tan(std::numbers::pi * (0.5 - clamped));
            }
            const double t = sum / static_cast<double>(u);
            const double combined = 0.5 - std::atan(t) / std::numbers::pi;
            return std::min(std::max(combined, 0.0), 1.0);
        }
        case CombineMethod::Kind::harmonic: {
            double inv_sum = 0.0;
            for (double p : pvalues) inv_sum += 1.0 / std::max(p, 1e-300);
            const double harmonic_mean = static_cast<double>(u) / inv_sum;
            return std::min(std::numbers::e * std::log(static_cast<double>(u)) * harmonic_mean,
                            1.0);
        }
    }
    throw InvalidConfig("unknown combine method");
}

}  // namespace bbsig
