#pragma once

// Special functions and distribution quantiles used by the CI constructors
// and the asymptotics checks. All functions are pure and reentrant.

namespace turingci {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse of the standard normal CDF for p in (0,1).
// Rational approximation refined with one Halley step; |error| < 1e-8.
double normal_quantile(double p);

// Gamma function for x > 0.
double gamma_function(double x);

// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s),
// s > 0, x >= 0. Monotone nondecreasing in x.
double regularized_lower_gamma(double s, double x);

// Chi-squared CDF with df > 0 degrees of freedom.
double chi_squared_cdf(double x, double df);

// Chi-squared quantile: x with P(df/2, x/2) = p, for p in (0,1), df > 0.
// Wilson-Hilferty start, then bracketed safeguarded Newton.
double chi_squared_quantile(double p, double df);

}  // namespace turingci
