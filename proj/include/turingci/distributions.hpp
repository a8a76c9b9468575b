#pragma once

// The five distribution families used in the simulation study: pmf
// evaluation, inverse-transform sampling, true occupancy probabilities,
// the true asymptotic sd of n(T - pi), the analytic bias, and the
// Lindeberg-type statistic. Letter indices are 1-based throughout.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "turingci/profile.hpp"
#include "turingci/rng.hpp"

namespace turingci {

struct FixedUniform {
    std::uint64_t K = 1;  // K >= 1
};

struct DynamicUniform {
    double gamma = 1.0;  // K = floor(n^gamma), gamma > 0
};

struct FixedGeometric {
    double p = 0.5;  // p in (0,1)
};

// a_n = c * n^beta, so p^(n) = 1 - exp(-1/a_n).
struct DynamicGeometric {
    double c = 0.25;
    double beta = 0.5;  // 0 < beta < 1
};

struct DiscretePareto {
    double alpha = 1.0;  // alpha > 0
};

using DistributionSpec =
    std::variant<FixedUniform, DynamicUniform, FixedGeometric, DynamicGeometric,
                 DiscretePareto>;

// Family resolved at a given sample size n.
struct ResolvedDistribution {
    enum class Kind { Uniform, Geometric, Pareto };
    Kind kind = Kind::Uniform;
    std::uint64_t K = 1;      // Uniform support size
    double p = 0.0;           // Geometric success probability
    double alpha = 0.0;       // Pareto tail index

    double pmf(std::uint64_t letter) const;
    LetterId draw(double u) const;  // inverse transform from u in (0,1)
};

ResolvedDistribution resolve(const DistributionSpec& spec, std::uint64_t n);

// For the geometric families: a = -1/log(1-p).
double geometric_a_from_p(double p);
double geometric_p_from_a(double a);

// Canonical text forms, e.g. "uniform:K=100", "dunif:gamma=1.5",
// "geom:p=0.5", "dgeom:c=0.25,beta=0.5", "pareto:alpha=1.5".
DistributionSpec parse_distribution(const std::string& text);
std::string format_distribution(const DistributionSpec& spec);

// pmf of resolve(spec, n) at letter (>= 1); 0 outside the support.
double pmf(const DistributionSpec& spec, std::uint64_t n, std::uint64_t letter);

// n iid draws from resolve(spec, n).
std::vector<LetterId> draw_sample(const DistributionSpec& spec, std::uint64_t n,
                                  const RngStream& rng);

// pi_{r,n} given the realized sample. For r = 0 this is one minus the total
// probability of the observed letters, which is exact for infinite support.
double true_occupancy_probability(const DistributionSpec& spec, std::uint64_t n,
                                  const SampleProfile& profile, std::uint64_t r);

// s_{r,n} = sqrt(sum_l (r+1+np_l) e^{-np_l} (np_l)^{r+1} / r!).
// Infinite supports are truncated with a certified tail estimate.
double true_asymptotic_sd(const DistributionSpec& spec, std::uint64_t n,
                          std::uint64_t r);

// E[T_{r,n} - pi_{r,n}] per the closed-form bias expression. With
// modified_estimator set, the (p - r/n) factor is replaced by p, which is
// the bias of T*_{r,n}.
double analytic_bias(const DistributionSpec& spec, std::uint64_t n,
                     std::uint64_t r, bool modified_estimator = false);

// s^{-2} sum_l e^{-np_l} (np_l)^{r+2} 1[np_l >= eps*s]. The indicator keeps
// only finitely many letters, so the sum is exact. Throws if s_{r,n} = 0.
double lindeberg_statistic(const DistributionSpec& spec, std::uint64_t n,
                           std::uint64_t r, double eps);

}  // namespace turingci
