#include "turingci/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace turingci {

namespace {

constexpr double kTailRelTol = 1e-12;
constexpr double kTailAbsFloor = 1e-18;
constexpr std::uint64_t kMaxLetter = 1ull << 62;

double factorial(std::uint64_t r) {
    double f = 1.0;
    for (std::uint64_t i = 2; i <= r; ++i) f *= static_cast<double>(i);
    return f;
}

// One summand of the asymptotic variance: (r+1+x) e^{-x} x^{r+1} / r!.
double occupancy_variance_term(double x, std::uint64_t r, double inv_rfact) {
    return (static_cast<double>(r + 1) + x) * std::exp(-x) *
           std::pow(x, static_cast<double>(r + 1)) * inv_rfact;
}

struct TailEstimate {
    double value = 0.0;  // certified estimate of the remaining tail
    double error = 0.0;  // bound on |true tail - value|
};

// Bracket for sum_{l > L} p_l^m under the discrete Pareto, using the
// envelope alpha*(l+1)^{-alpha-1} <= p_l <= alpha*l^{-alpha-1} and
// integral comparison. Requires m*(alpha+1) > 1.
TailEstimate pareto_power_tail(double alpha, double m, std::uint64_t L) {
    double kappa = m * (alpha + 1.0);
    double am = std::pow(alpha, m);
    double up = am * (std::pow(static_cast<double>(L + 1), -kappa) +
                      std::pow(static_cast<double>(L + 1), 1.0 - kappa) / (kappa - 1.0));
    double lo = am * std::pow(static_cast<double>(L + 2), 1.0 - kappa) / (kappa - 1.0);
    return {0.5 * (up + lo), 0.5 * (up - lo)};
}

double kahan_add(double& sum, double& comp, double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    return sum;
}

}  // namespace

double geometric_a_from_p(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("geometric parameter p must be in (0,1)");
    }
    return -1.0 / std::log1p(-p);
}

double geometric_p_from_a(double a) {
    if (!(a > 0.0)) {
        throw std::domain_error("geometric rate a must be positive");
    }
    return -std::expm1(-1.0 / a);
}

ResolvedDistribution resolve(const DistributionSpec& spec, std::uint64_t n) {
    ResolvedDistribution d;
    if (const auto* u = std::get_if<FixedUniform>(&spec)) {
        if (u->K < 1) throw std::domain_error("uniform: K must be >= 1");
        d.kind = ResolvedDistribution::Kind::Uniform;
        d.K = u->K;
    } else if (const auto* du = std::get_if<DynamicUniform>(&spec)) {
        if (!(du->gamma > 0.0)) throw std::domain_error("dunif: gamma must be positive");
        double v = std::pow(static_cast<double>(n), du->gamma);
        double rv = std::round(v);
        // Snap to the nearest integer when pow lands within rounding noise of it.
        if (std::fabs(v - rv) <= 1e-9 * std::max(1.0, rv)) v = rv;
        d.kind = ResolvedDistribution::Kind::Uniform;
        d.K = static_cast<std::uint64_t>(std::floor(v));
        if (d.K < 1) d.K = 1;
    } else if (const auto* g = std::get_if<FixedGeometric>(&spec)) {
        if (!(g->p > 0.0 && g->p < 1.0)) {
            throw std::domain_error("geom: p must be in (0,1)");
        }
        d.kind = ResolvedDistribution::Kind::Geometric;
        d.p = g->p;
    } else if (const auto* dg = std::get_if<DynamicGeometric>(&spec)) {
        if (!(dg->c > 0.0) || !(dg->beta > 0.0 && dg->beta < 1.0)) {
            throw std::domain_error("dgeom: require c > 0 and beta in (0,1)");
        }
        double a_n = dg->c * std::pow(static_cast<double>(n), dg->beta);
        d.kind = ResolvedDistribution::Kind::Geometric;
        d.p = geometric_p_from_a(a_n);
    } else {
        const auto& pa = std::get<DiscretePareto>(spec);
        if (!(pa.alpha > 0.0)) throw std::domain_error("pareto: alpha must be positive");
        d.kind = ResolvedDistribution::Kind::Pareto;
        d.alpha = pa.alpha;
    }
    return d;
}

double ResolvedDistribution::pmf(std::uint64_t letter) const {
    if (letter < 1) return 0.0;
    switch (kind) {
        case Kind::Uniform:
            return letter <= K ? 1.0 / static_cast<double>(K) : 0.0;
        case Kind::Geometric:
            return p * std::exp(static_cast<double>(letter - 1) * std::log1p(-p));
        case Kind::Pareto: {
            double l = static_cast<double>(letter);
            return std::pow(l, -alpha) - std::pow(l + 1.0, -alpha);
        }
    }
    return 0.0;
}

LetterId ResolvedDistribution::draw(double u) const {
    switch (kind) {
        case Kind::Uniform: {
            auto letter = static_cast<std::uint64_t>(
                std::ceil(u * static_cast<double>(K)));
            if (letter < 1) letter = 1;
            if (letter > K) letter = K;
            return letter;
        }
        case Kind::Geometric: {
            double v = std::ceil(std::log(u) / std::log1p(-p));
            if (v < 1.0) return 1;
            if (v >= static_cast<double>(kMaxLetter)) return kMaxLetter;
            return static_cast<LetterId>(v);
        }
        case Kind::Pareto: {
            double v = std::floor(std::pow(u, -1.0 / alpha));
            if (v < 1.0) return 1;
            if (v >= static_cast<double>(kMaxLetter)) return kMaxLetter;
            return static_cast<LetterId>(v);
        }
    }
    return 1;
}

namespace {

std::unordered_map<std::string, std::string> parse_kv(const std::string& body) {
    std::unordered_map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("distribution parameter must be key=value: " + item);
        }
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double require_num(const std::unordered_map<std::string, std::string>& kv,
                   const std::string& key, const std::string& family) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        throw std::invalid_argument(family + ": missing parameter '" + key + "'");
    }
    return std::stod(it->second);
}

}  // namespace

DistributionSpec parse_distribution(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("distribution text form must be family:params, got " + text);
    }
    std::string family = text.substr(0, colon);
    auto kv = parse_kv(text.substr(colon + 1));
    if (family == "uniform") {
        double k = require_num(kv, "K", family);
        if (!(k >= 1.0)) throw std::invalid_argument("uniform: K must be >= 1");
        return FixedUniform{static_cast<std::uint64_t>(k)};
    }
    if (family == "dunif") return DynamicUniform{require_num(kv, "gamma", family)};
    if (family == "geom") return FixedGeometric{require_num(kv, "p", family)};
    if (family == "dgeom") {
        return DynamicGeometric{require_num(kv, "c", family), require_num(kv, "beta", family)};
    }
    if (family == "pareto") return DiscretePareto{require_num(kv, "alpha", family)};
    throw std::invalid_argument("unknown distribution family: " + family);
}

std::string format_distribution(const DistributionSpec& spec) {
    char buf[96];
    if (const auto* u = std::get_if<FixedUniform>(&spec)) {
        std::snprintf(buf, sizeof(buf), "uniform:K=%llu",
                      static_cast<unsigned long long>(u->K));
    } else if (const auto* du = std::get_if<DynamicUniform>(&spec)) {
        std::snprintf(buf, sizeof(buf), "dunif:gamma=%.9g", du->gamma);
    } else if (const auto* g = std::get_if<FixedGeometric>(&spec)) {
        std::snprintf(buf, sizeof(buf), "geom:p=%.9g", g->p);
    } else if (const auto* dg = std::get_if<DynamicGeometric>(&spec)) {
        std::snprintf(buf, sizeof(buf), "dgeom:c=%.9g,beta=%.9g", dg->c, dg->beta);
    } else {
        std::snprintf(buf, sizeof(buf), "pareto:alpha=%.9g",
                      std::get<DiscretePareto>(spec).alpha);
    }
    return buf;
}

double pmf(const DistributionSpec& spec, std::uint64_t n, std::uint64_t letter) {
    return resolve(spec, n).pmf(letter);
}

std::vector<LetterId> draw_sample(const DistributionSpec& spec, std::uint64_t n,
                                  const RngStream& rng) {
    if (n < 1) throw std::domain_error("draw_sample: n must be >= 1");
    ResolvedDistribution d = resolve(spec, n);
    auto engine = rng.make_engine();
    std::vector<LetterId> sample;
    sample.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        sample.push_back(d.draw(uniform_open01(engine)));
    }
    return sample;
}

double true_occupancy_probability(const DistributionSpec& spec, std::uint64_t n,
                                  const SampleProfile& profile, std::uint64_t r) {
    ResolvedDistribution d = resolve(spec, n);
    double sum = 0.0, comp = 0.0;
    if (r == 0) {
        for (const auto& [letter, y] : profile.letter_counts()) {
            kahan_add(sum, comp, d.pmf(letter));
        }
        double miss = 1.0 - sum;
        return miss < 0.0 ? 0.0 : miss;
    }
    for (const auto& [letter, y] : profile.letter_counts()) {
        if (y == r) kahan_add(sum, comp, d.pmf(letter));
    }
    return sum;
}

namespace {

// Variance sum for the geometric family; the tail past letter l is bounded
// by a geometric series in q^{r+1} once terms are decreasing.
double geometric_variance_sum(double p, std::uint64_t n, std::uint64_t r) {
    double q = 1.0 - p;
    double inv_rfact = 1.0 / factorial(r);
    double qr1 = std::pow(q, static_cast<double>(r + 1));
    double x = static_cast<double>(n) * p;
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
        kahan_add(sum, comp, occupancy_variance_term(x, r, inv_rfact));
        double tail_bound = (static_cast<double>(r + 1) + x) * inv_rfact *
                            std::pow(x, static_cast<double>(r + 1)) * qr1 / (1.0 - qr1);
        if (x < static_cast<double>(r + 1) &&
            tail_bound < std::max(kTailRelTol * sum, kTailAbsFloor)) {
            break;
        }
        x *= q;
    }
    return sum;
}

// Variance sum for the discrete Pareto. Terms are summed exactly up to L;
// the remainder is replaced by a certified estimate. For r = 0 the linear
// part of the tail telescopes exactly; for r >= 1 the tail is approximated
// by (r+1)/r! * (np)^{r+1} with a bounded correction.
double pareto_variance_sum(double alpha, std::uint64_t n, std::uint64_t r) {
    double inv_rfact = 1.0 / factorial(r);
    double nd = static_cast<double>(n);
    double sum = 0.0, comp = 0.0;
    double pow_l = 1.0;  // l^{-alpha} at l = 1
    for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
        double pow_l1 = std::pow(static_cast<double>(l + 1), -alpha);
        double pl = pow_l - pow_l1;
        double x = nd * pl;
        kahan_add(sum, comp, occupancy_variance_term(x, r, inv_rfact));
        if (x < 1.0 && x < static_cast<double>(r + 1)) {
            double tail, err;
            if (r == 0) {
                // sum_{l'>l} x' = n*(l+1)^{-alpha} exactly; the remaining
                // factor (1+x)e^{-x} lies in [1 - x^2/2, 1].
                TailEstimate cubes = pareto_power_tail(alpha, 3.0, l);
                double corr = 0.5 * nd * nd * nd * (cubes.value + cubes.error);
                tail = nd * pow_l1 - 0.5 * corr;
                err = 0.5 * corr;
            } else {
                TailEstimate main = pareto_power_tail(alpha, static_cast<double>(r + 1), l);
                TailEstimate corr = pareto_power_tail(alpha, static_cast<double>(r + 2), l);
                double lead = static_cast<double>(r + 1) * inv_rfact;
                tail = lead * std::pow(nd, static_cast<double>(r + 1)) * main.value;
                err = lead * std::pow(nd, static_cast<double>(r + 1)) * main.error +
                      lead * std::pow(nd, static_cast<double>(r + 2)) *
                          (corr.value + corr.error);
            }
            if (err < std::max(kTailRelTol * std::fabs(sum + tail), kTailAbsFloor)) {
                sum += tail;
                break;
            }
        }
        pow_l = pow_l1;
    }
    return sum;
}

}  // namespace

double true_asymptotic_sd(const DistributionSpec& spec, std::uint64_t n,
                          std::uint64_t r) {
    if (n < 1) throw std::domain_error("true_asymptotic_sd: n must be >= 1");
    ResolvedDistribution d = resolve(spec, n);
    double s2 = 0.0;
    double inv_rfact = 1.0 / factorial(r);
    switch (d.kind) {
        case ResolvedDistribution::Kind::Uniform: {
            double x = static_cast<double>(n) / static_cast<double>(d.K);
            s2 = static_cast<double>(d.K) * occupancy_variance_term(x, r, inv_rfact);
            break;
        }
        case ResolvedDistribution::Kind::Geometric:
            s2 = geometric_variance_sum(d.p, n, r);
            break;
        case ResolvedDistribution::Kind::Pareto:
            s2 = pareto_variance_sum(d.alpha, n, r);
            break;
    }
    return s2 > 0.0 ? std::sqrt(s2) : 0.0;
}

namespace {

// Bias summand: C(n,r) p^{r+1} (1-p)^{n-r-1} * factor, with the binomial
// coefficient kept in the log domain.
double bias_term(double log_choose, double p, std::uint64_t n, std::uint64_t r,
                 double factor) {
    if (p >= 1.0) {
        return n == r + 1 ? std::exp(log_choose) * factor : 0.0;
    }
    double lg = log_choose + static_cast<double>(r + 1) * std::log(p) +
                static_cast<double>(n - r - 1) * std::log1p(-p);
    return std::exp(lg) * factor;
}

}  // namespace

double analytic_bias(const DistributionSpec& spec, std::uint64_t n,
                     std::uint64_t r, bool modified_estimator) {
    if (n < 1 || r + 1 > n) {
        throw std::domain_error("analytic_bias: require n >= 1 and r <= n-1");
    }
    ResolvedDistribution d = resolve(spec, n);
    double nd = static_cast<double>(n);
    double rd = static_cast<double>(r);
    double log_choose = std::lgamma(nd + 1.0) - std::lgamma(rd + 1.0) -
                        std::lgamma(nd - rd + 1.0);
    double choose = std::exp(log_choose);
    auto factor_of = [&](double p) { return modified_estimator ? p : p - rd / nd; };

    if (d.kind == ResolvedDistribution::Kind::Uniform) {
        double p = 1.0 / static_cast<double>(d.K);
        return static_cast<double>(d.K) * bias_term(log_choose, p, n, r, factor_of(p));
    }

    if (d.kind == ResolvedDistribution::Kind::Geometric) {
        double q = 1.0 - d.p;
        double qr1 = std::pow(q, rd + 1.0), qr2 = std::pow(q, rd + 2.0);
        double p = d.p;
        double sum = 0.0, comp = 0.0;
        for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
            kahan_add(sum, comp, bias_term(log_choose, p, n, r, factor_of(p)));
            double pn = p * q;
            double bound = choose * std::pow(pn, rd + 2.0) * 1.0 / (1.0 - qr2);
            if (!modified_estimator && r > 0) {
                bound += choose * (rd / nd) * std::pow(pn, rd + 1.0) / (1.0 - qr1);
            }
            if (bound < std::max(kTailRelTol * std::fabs(sum), kTailAbsFloor)) break;
            p = pn;
        }
        return sum;
    }

    // Discrete Pareto: exact terms plus a certified tail estimate once np is
    // small. In the tail (1-p)^{n-r-1} is within np of 1.
    double alpha = d.alpha;
    double sum = 0.0, comp = 0.0;
    double pow_l = 1.0;
    for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
        double pow_l1 = std::pow(static_cast<double>(l + 1), -alpha);
        double pl = pow_l - pow_l1;
        kahan_add(sum, comp, bias_term(log_choose, pl, n, r, factor_of(pl)));
        if (nd * pl < 0.5) {
            double tail, err;
            if (modified_estimator) {
                TailEstimate main = pareto_power_tail(alpha, rd + 2.0, l);
                TailEstimate corr = pareto_power_tail(alpha, rd + 3.0, l);
                double c = choose * nd * (corr.value + corr.error);
                tail = choose * main.value - 0.5 * c;
                err = choose * main.error + 0.5 * c;
            } else if (r == 0) {
                TailEstimate main = pareto_power_tail(alpha, 2.0, l);
                TailEstimate corr = pareto_power_tail(alpha, 3.0, l);
                double c = nd * (corr.value + corr.error);
                tail = main.value - 0.5 * c;
                err = main.error + 0.5 * c;
            } else {
                TailEstimate main = pareto_power_tail(alpha, rd + 1.0, l);
                TailEstimate corr = pareto_power_tail(alpha, rd + 2.0, l);
                tail = -choose * (rd / nd) * main.value;
                err = choose * (rd / nd) * main.error +
                      choose * (1.0 + rd) * (corr.value + corr.error);
            }
            if (err < std::max(kTailRelTol * std::fabs(sum + tail), kTailAbsFloor)) {
                sum += tail;
                break;
            }
        }
        pow_l = pow_l1;
    }
    return sum;
}

double lindeberg_statistic(const DistributionSpec& spec, std::uint64_t n,
                           std::uint64_t r, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("lindeberg_statistic: eps must be positive");
    double s = true_asymptotic_sd(spec, n, r);
    if (!(s > 0.0)) {
        throw std::domain_error("lindeberg_statistic: s_{r,n} is degenerate (0)");
    }
    double threshold = eps * s;
    double nd = static_cast<double>(n);
    double power = static_cast<double>(r + 2);
    ResolvedDistribution d = resolve(spec, n);
    double sum = 0.0, comp = 0.0;
    if (d.kind == ResolvedDistribution::Kind::Uniform) {
        double x = nd / static_cast<double>(d.K);
        if (x >= threshold) {
            sum = static_cast<double>(d.K) * std::exp(-x) * std::pow(x, power);
        }
    } else {
        // x_l = n p_l is strictly decreasing, so the indicator truncates the
        // sum at the first letter with x below the threshold.
        for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
            double x = nd * d.pmf(l);
            if (x < threshold) break;
            kahan_add(sum, comp, std::exp(-x) * std::pow(x, power));
        }
    }
    return sum / (s * s);
}

}  // namespace turingci
