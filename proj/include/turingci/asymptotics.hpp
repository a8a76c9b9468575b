#pragma once

// Numeric verification of the limit-regime classification and the
// closed-form / equivalent expressions for s^2_{r,n}. Limits are checked as
// finite-n ratio bands, never symbolically.

#include <cstdint>
#include <vector>

#include "turingci/distributions.hpp"

namespace turingci {

enum class RegimeClass {
    Normal,
    Poisson,       // Poisson limit with mean poisson_mean
    VanishingSd,   // s_{r,n} -> 0
    Unknown,       // no available result
    BoundedOscillating,
};

const char* regime_name(RegimeClass c);

struct AsymptoticRegime {
    DistributionSpec family;
    std::uint64_t r = 0;
    RegimeClass classification = RegimeClass::Unknown;
    double poisson_mean = 0.0;  // set when classification == Poisson
};

// Decision table over the four studied families. Fixed uniform has no
// entry and maps to Unknown.
AsymptoticRegime classify_regime(const DistributionSpec& family, std::uint64_t r);

// s^2_{r,n} for the dynamic uniform,
// floor(n^g) * (r+1+n/K) e^{-n/K} (n/K)^{r+1} / r! with K = floor(n^g).
double uniform_s_squared_closed_form(double gamma, std::uint64_t n, std::uint64_t r);

// The stated asymptotic equivalent of s^2_{r,n} for the dynamic uniform:
// n(r+2)e^{-1}/r! at gamma = 1, n^{r+1-gamma*r}(r+1)/r! for gamma > 1.
// Throws for regimes without a stated equivalent.
double uniform_s_squared_equivalent(double gamma, std::uint64_t n, std::uint64_t r);

// s^2(n) / equivalent(n) along n_grid; the ratios approach 1.
std::vector<double> uniform_asymptotic_ratio(double gamma, std::uint64_t r,
                                             const std::vector<std::uint64_t>& n_grid);

// s^2_{r,n} for the geometric with rate a = -1/log(1-p), summed in the
// h_{n,eta} form with a certified truncation (independent of the
// distributions-module summation route).
double geometric_s_squared_truncated(double a, std::uint64_t n, std::uint64_t r);

// liminf/limsup bounds for s^2_{r,n} of the fixed geometric with rate a.
struct GeometricBounds {
    double lower = 0.0;
    double upper = 0.0;
};
GeometricBounds geometric_bounds(double a, std::uint64_t r);

// (sum_l h_{n,eta}(l)) / (a_n * Gamma(eta)); approaches 1 when a_n -> inf
// with a_n/n -> 0.
double geometric_gamma_limit_ratio(double a_n, double eta, std::uint64_t n);

}  // namespace turingci
