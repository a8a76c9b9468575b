#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "turingci/distributions.hpp"
#include "turingci/harness.hpp"

using namespace turingci;

TEST_CASE("pmf examples") {
    CHECK(pmf(FixedGeometric{0.5}, 1, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(pmf(DiscretePareto{1.0}, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pmf(DynamicUniform{1.5}, 100, 1) == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(pmf(DynamicUniform{1.5}, 100, 1000) == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(pmf(DynamicUniform{1.5}, 100, 1001) == 0.0);  // outside support
    CHECK(pmf(FixedUniform{4}, 10, 0) == 0.0);
}

TEST_CASE("pmf mass sums to one") {
    // Uniform: exact at K.
    double sum = 0.0;
    for (std::uint64_t l = 1; l <= 64; ++l) sum += pmf(FixedUniform{64}, 1, l);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // Geometric: partial sum is 1 - (1-p)^L.
    sum = 0.0;
    for (std::uint64_t l = 1; l <= 50; ++l) sum += pmf(FixedGeometric{0.3}, 1, l);
    CHECK(sum == doctest::Approx(1.0 - std::pow(0.7, 50.0)).epsilon(1e-12));
    // Pareto: the pmf telescopes, partial sum is 1 - (L+1)^{-alpha}.
    sum = 0.0;
    for (std::uint64_t l = 1; l <= 1000; ++l) sum += pmf(DiscretePareto{1.5}, 1, l);
    CHECK(sum == doctest::Approx(1.0 - std::pow(1001.0, -1.5)).epsilon(1e-10));
}

TEST_CASE("draw_sample inverse transform examples") {
    auto degenerate = draw_sample(FixedUniform{1}, 3, RngStream{123, 0});
    CHECK(degenerate == std::vector<LetterId>{1, 1, 1});

    ResolvedDistribution pareto = resolve(DiscretePareto{1.0}, 1);
    CHECK(pareto.draw(0.3) == 3);  // floor(1/0.3)
    ResolvedDistribution geom = resolve(FixedGeometric{0.5}, 1);
    CHECK(geom.draw(0.6) == 1);
    CHECK(geom.draw(0.4) == 2);  // ceil(ln 0.4 / ln 0.5) = ceil(1.32)
}

TEST_CASE("geometric sampling frequency within the 3-sigma binomial band") {
    auto sample = draw_sample(FixedGeometric{0.5}, 1000000, RngStream{2024, 0});
    std::uint64_t ones = 0;
    for (LetterId l : sample) ones += l == 1;
    double freq = static_cast<double>(ones) / 1e6;
    CHECK(freq >= 0.4985);
    CHECK(freq <= 0.5015);
}

TEST_CASE("same stream reproduces, different streams differ") {
    auto a = draw_sample(DiscretePareto{1.0}, 1000, RngStream{5, 3});
    auto b = draw_sample(DiscretePareto{1.0}, 1000, RngStream{5, 3});
    auto c = draw_sample(DiscretePareto{1.0}, 1000, RngStream{5, 4});
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("true_occupancy_probability examples") {
    SampleProfile p112 = SampleProfile::from_sample(std::vector<LetterId>{1, 1, 2});
    CHECK(true_occupancy_probability(FixedUniform{4}, 3, p112, 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(true_occupancy_probability(FixedUniform{4}, 3, p112, 1) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(true_occupancy_probability(FixedUniform{4}, 3, p112, 2) ==
          doctest::Approx(0.25).epsilon(1e-12));

    SampleProfile p11 = SampleProfile::from_sample(std::vector<LetterId>{1, 1});
    CHECK(true_occupancy_probability(FixedGeometric{0.5}, 2, p11, 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("true_asymptotic_sd uniform closed form") {
    // K(r+1+n/K) e^{-n/K} (n/K)^{r+1} / r! with K = n = 100.
    CHECK(true_asymptotic_sd(FixedUniform{100}, 100, 0) ==
          doctest::Approx(std::sqrt(200.0 / std::exp(1.0))).epsilon(1e-12));
    CHECK(true_asymptotic_sd(FixedUniform{100}, 100, 1) ==
          doctest::Approx(std::sqrt(300.0 / std::exp(1.0))).epsilon(1e-12));
}

TEST_CASE("geometric variance sum against a brute-force oracle") {
    for (double p : {0.2, 0.5, 0.9}) {
        for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
            for (std::uint64_t r : {0ull, 1ull, 2ull}) {
                double rfact = r == 2 ? 2.0 : 1.0;
                long double brute = 0.0L;
                for (std::uint64_t l = 1; l <= 400000; ++l) {
                    long double pl = static_cast<long double>(p) *
                                     std::pow(1.0L - static_cast<long double>(p),
                                              static_cast<long double>(l - 1));
                    long double x = static_cast<long double>(n) * pl;
                    brute += (static_cast<long double>(r + 1) + x) * std::exp(-x) *
                             std::pow(x, static_cast<long double>(r + 1)) / rfact;
                    if (x < 1e-30L) break;
                }
                double s = true_asymptotic_sd(FixedGeometric{p}, n, r);
                CHECK(s * s == doctest::Approx(static_cast<double>(brute)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("geometric variance at p=0.9, n=1e6 sits inside the limit bounds") {
    double s = true_asymptotic_sd(FixedGeometric{0.9}, 1000000, 0);
    CHECK(s * s >= 0.0);
    CHECK(s * s <= 2.68705);
}

TEST_CASE("pareto variance sum against a brute-force oracle") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        for (std::uint64_t r : {0ull, 1ull, 2ull}) {
            std::uint64_t n = 100;
            double rfact = r == 2 ? 2.0 : 1.0;
            long double brute = 0.0L;
            std::uint64_t L = 2000000;
            long double pow_l = 1.0L;
            for (std::uint64_t l = 1; l <= L; ++l) {
                long double pow_l1 =
                    std::pow(static_cast<long double>(l + 1), -static_cast<long double>(alpha));
                long double x = static_cast<long double>(n) * (pow_l - pow_l1);
                brute += (static_cast<long double>(r + 1) + x) * std::exp(-x) *
                         std::pow(x, static_cast<long double>(r + 1)) / rfact;
                pow_l = pow_l1;
            }
            double tol;
            if (r == 0) {
                // Linear tail of the brute sum telescopes to n (L+1)^{-alpha}.
                brute += static_cast<long double>(n) * pow_l;
                tol = 1e-6;
            } else {
                tol = 1e-8;
            }
            double s = true_asymptotic_sd(DiscretePareto{alpha}, n, r);
            CHECK(s * s == doctest::Approx(static_cast<double>(brute)).epsilon(tol));
        }
    }
}

namespace {

// Exhaustive enumeration of E[T_{r,n} - pi_{r,n}] for FixedUniform K=2: all
// 2^n samples are equally likely.
double enumerate_bias_k2(std::uint64_t n, std::uint64_t r, bool modified) {
    long double total = 0.0L;
    std::uint64_t samples = 1ull << n;
    for (std::uint64_t mask = 0; mask < samples; ++mask) {
        std::uint64_t y1 = 0;
        for (std::uint64_t i = 0; i < n; ++i) y1 += (mask >> i) & 1;
        std::uint64_t y2 = n - y1;
        std::uint64_t Nr1 = (y1 == r + 1) + (y2 == r + 1);
        long double denom = modified ? static_cast<long double>(n - r)
                                     : static_cast<long double>(n);
        long double T = static_cast<long double>(r + 1) * Nr1 / denom;
        long double pi = 0.5L * ((y1 == r) + (y2 == r));
        total += T - pi;
    }
    return static_cast<double>(total / static_cast<long double>(samples));
}

}  // namespace

TEST_CASE("analytic_bias matches exhaustive enumeration for K=2") {
    CHECK(analytic_bias(FixedUniform{2}, 2, 0) == doctest::Approx(0.25).epsilon(1e-12));
    for (std::uint64_t n = 2; n <= 6; ++n) {
        for (std::uint64_t r : {0ull, 1ull}) {
            if (r + 1 > n) continue;
            CHECK(analytic_bias(FixedUniform{2}, n, r) ==
                  doctest::Approx(enumerate_bias_k2(n, r, false)).epsilon(1e-12));
            if (r < n) {
                CHECK(analytic_bias(FixedUniform{2}, n, r, true) ==
                      doctest::Approx(enumerate_bias_k2(n, r, true)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("analytic_bias degenerate single-letter alphabet") {
    CHECK(analytic_bias(FixedUniform{1}, 5, 0) == 0.0);
}

TEST_CASE("analytic_bias geometric against a brute-force oracle") {
    double p = 0.5;
    std::uint64_t n = 50;
    for (std::uint64_t r : {0ull, 1ull, 2ull}) {
        long double lc = std::lgamma(51.0L) - std::lgamma(static_cast<long double>(r) + 1.0L) -
                         std::lgamma(51.0L - static_cast<long double>(r));
        long double brute = 0.0L;
        for (std::uint64_t l = 1; l <= 2000; ++l) {
            long double pl = 0.5L * std::pow(0.5L, static_cast<long double>(l - 1));
            long double term =
                std::exp(lc + static_cast<long double>(r + 1) * std::log(pl) +
                         static_cast<long double>(n - r - 1) * std::log1p(-pl));
            brute += term * (pl - static_cast<long double>(r) / n);
        }
        CHECK(analytic_bias(FixedGeometric{p}, n, r) ==
              doctest::Approx(static_cast<double>(brute)).epsilon(1e-10));
    }
}

TEST_CASE("analytic_bias pareto against a brute-force oracle") {
    double alpha = 1.5;
    std::uint64_t n = 50;
    for (std::uint64_t r : {0ull, 1ull}) {
        long double lc = std::lgamma(51.0L) - std::lgamma(static_cast<long double>(r) + 1.0L) -
                         std::lgamma(51.0L - static_cast<long double>(r));
        long double brute = 0.0L;
        long double pow_l = 1.0L;
        for (std::uint64_t l = 1; l <= 1000000; ++l) {
            long double pow_l1 = std::pow(static_cast<long double>(l + 1), -1.5L);
            long double pl = pow_l - pow_l1;
            long double term =
                std::exp(lc + static_cast<long double>(r + 1) * std::log(pl) +
                         static_cast<long double>(n - r - 1) * std::log1p(-pl));
            brute += term * (pl - static_cast<long double>(r) / n);
            pow_l = pow_l1;
        }
        CHECK(analytic_bias(DiscretePareto{alpha}, n, r) ==
              doctest::Approx(static_cast<double>(brute)).epsilon(1e-8));
    }
}

TEST_CASE("Monte Carlo bias agrees with the analytic value within 3 SE") {
    DistributionSpec spec = FixedUniform{100};
    std::uint64_t n = 200, reps = 100000;
    for (std::uint64_t r : {0ull, 1ull}) {
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t i = 0; i < reps; ++i) {
            ReplicationSummary rep =
                simulate_replication(spec, n, r, cell_stream(777 + r, n, i));
            double diff = rep.turing(r) - rep.pi[r];
            sum += diff;
            sumsq += diff * diff;
        }
        double mean = sum / static_cast<double>(reps);
        double var = (sumsq - sum * sum / static_cast<double>(reps)) /
                     static_cast<double>(reps - 1);
        double se = std::sqrt(var / static_cast<double>(reps));
        double expected = analytic_bias(spec, n, r);
        CHECK(std::fabs(mean - expected) < 3.0 * se);
    }
}

TEST_CASE("lindeberg_statistic examples") {
    // All np_l = 1: statistic = (n/K) / (r+1+n/K).
    CHECK(lindeberg_statistic(FixedUniform{100}, 100, 0, 0.01) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lindeberg_statistic(FixedUniform{100}, 100, 0, 2.0) == 0.0);
    double v = lindeberg_statistic(FixedGeometric{0.5}, 10000, 0, 0.05);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    CHECK_THROWS_AS(lindeberg_statistic(FixedGeometric{0.5}, 10000, 0, 0.0),
                    std::domain_error);
}

TEST_CASE("distribution text forms round trip") {
    for (const char* text : {"uniform:K=100", "dunif:gamma=1.5", "geom:p=0.5",
                             "dgeom:c=0.25,beta=0.5", "pareto:alpha=1.5"}) {
        CHECK(format_distribution(parse_distribution(text)) == text);
    }
    CHECK_THROWS_AS(parse_distribution("nope:x=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("uniform"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("geom:p"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("geom:q=0.5"), std::invalid_argument);
}

TEST_CASE("resolve applies the dynamic rules") {
    ResolvedDistribution du = resolve(DynamicUniform{1.5}, 100);
    CHECK(du.K == 1000);
    ResolvedDistribution dg = resolve(DynamicGeometric{0.25, 0.5}, 10000);
    // a_n = sqrt(10^4)/4 = 25, p = 1 - e^{-1/25}
    CHECK(dg.p == doctest::Approx(-std::expm1(-1.0 / 25.0)).epsilon(1e-12));
    CHECK_THROWS_AS(resolve(FixedGeometric{1.5}, 10), std::domain_error);
    CHECK_THROWS_AS(resolve(DynamicUniform{-1.0}, 10), std::domain_error);
}
