#pragma once

namespace bbsig {

// Standard normal CDF, absolute error below 1e-14.
double normal_cdf(double x);

// Inverse of normal_cdf on (0, 1); rational approximation refined by one
// Halley step. Returns -inf/+inf at the endpoints.
double normal_quantile(double p);

// Owen's T function
//   T(h, a) = (1/2pi) * integral_0^a exp(-h^2 (1+x^2)/2) / (1+x^2) dx.
// Evaluated by Owen's convergent series for |a| <= 1 and the reduction
//   T(h, a) = (Phi(h) + Phi(ah))/2 - Phi(h) Phi(ah) - T(ah, 1/a)
// otherwise. Absolute error well below 1e-10 on finite inputs.
double owens_t(double h, double a);

}  // namespace bbsig
