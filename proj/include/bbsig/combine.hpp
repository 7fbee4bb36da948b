#pragma once

#include <string>
#include <vector>

#include "bbsig/types.hpp"

namespace bbsig {

struct CombineMethod {
    enum class Kind { q_order, hommel, bonferroni, quantile, median, cauchy, harmonic };
    Kind kind = Kind::hommel;
    int q = 1;            // q_order only
    double gamma = 0.25;  // quantile only, in (0, 1)

    // "hommel", "bonferroni", "median", "cauchy", "harmonic",
    // "q-order:<q>", "quantile:<gamma>".
    static CombineMethod parse(const std::string& text);
    std::string name() const;
};

// Aggregates U >= 2 p-values from repeated random splits.
//   q_order    min((U/q) P_(q), 1)
//   hommel     min(C_U min_q (U/q) P_(q), 1),  C_U = sum_{q=1}^U 1/q
//   bonferroni q_order with q = 1
//   quantile   q_order with q = ceil(gamma U)
//   median     q_order with q = ceil(U/2)
//   cauchy     back-transform of the mean of tan(pi (1/2 - p_u))
//   harmonic   min(e log(U) U / sum(1/p_u), 1)
// Throws NeedMultiplePValues for fewer than two inputs and InvalidPValue for
// entries outside [0, 1].
double combine(const std::vector<double>& pvalues, const CombineMethod& method);

}  // namespace bbsig
