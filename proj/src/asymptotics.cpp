#include "turingci/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "turingci/numerics.hpp"

namespace turingci {

const char* regime_name(RegimeClass c) {
    switch (c) {
        case RegimeClass::Normal: return "normal";
        case RegimeClass::Poisson: return "poisson";
        case RegimeClass::VanishingSd: return "vanishing_sd";
        case RegimeClass::Unknown: return "unknown";
        case RegimeClass::BoundedOscillating: return "bounded_oscillating";
    }
    return "?";
}

namespace {

double factorial(std::uint64_t r) {
    double f = 1.0;
    for (std::uint64_t i = 2; i <= r; ++i) f *= static_cast<double>(i);
    return f;
}

}  // namespace

AsymptoticRegime classify_regime(const DistributionSpec& family, std::uint64_t r) {
    AsymptoticRegime regime;
    regime.family = family;
    regime.r = r;

    if (const auto* du = std::get_if<DynamicUniform>(&family)) {
        double g = du->gamma;
        if (!(g > 0.0)) throw std::domain_error("classify_regime: gamma must be positive");
        if (g < 1.0) {
            regime.classification = RegimeClass::VanishingSd;
        } else if (g == 1.0) {
            regime.classification = r == 0 ? RegimeClass::Normal : RegimeClass::Unknown;
        } else if (r == 0) {
            regime.classification = RegimeClass::Unknown;
        } else {
            double boundary = 1.0 + 1.0 / static_cast<double>(r);
            if (g < boundary) {
                regime.classification = RegimeClass::Normal;
            } else if (g == boundary) {
                regime.classification = RegimeClass::Poisson;
                regime.poisson_mean = 1.0 / factorial(r + 1);
            } else {
                regime.classification = RegimeClass::VanishingSd;
            }
        }
    } else if (std::holds_alternative<DynamicGeometric>(family)) {
        // a_n = c n^beta with 0 < beta < 1: a_n -> inf and a_n/n -> 0.
        regime.classification = RegimeClass::Normal;
    } else if (std::holds_alternative<FixedGeometric>(family)) {
        regime.classification = RegimeClass::BoundedOscillating;
    } else if (std::holds_alternative<DiscretePareto>(family)) {
        regime.classification = RegimeClass::Normal;
    } else {
        regime.classification = RegimeClass::Unknown;
    }
    return regime;
}

double uniform_s_squared_closed_form(double gamma, std::uint64_t n,
                                     std::uint64_t r) {
    if (!(gamma > 0.0) || n < 1) {
        throw std::domain_error("uniform_s_squared_closed_form: require gamma > 0, n >= 1");
    }
    ResolvedDistribution d = resolve(DynamicUniform{gamma}, n);
    double K = static_cast<double>(d.K);
    double x = static_cast<double>(n) / K;
    return K * (static_cast<double>(r + 1) + x) * std::exp(-x) *
           std::pow(x, static_cast<double>(r + 1)) / factorial(r);
}

double uniform_s_squared_equivalent(double gamma, std::uint64_t n,
                                    std::uint64_t r) {
    double nd = static_cast<double>(n);
    if (gamma == 1.0) {
        return nd * static_cast<double>(r + 2) * std::exp(-1.0) / factorial(r);
    }
    if (gamma > 1.0) {
        double expo = static_cast<double>(r + 1) - gamma * static_cast<double>(r);
        return std::pow(nd, expo) * static_cast<double>(r + 1) / factorial(r);
    }
    throw std::domain_error(
        "uniform_s_squared_equivalent: no stated equivalent for gamma < 1");
}

std::vector<double> uniform_asymptotic_ratio(double gamma, std::uint64_t r,
                                             const std::vector<std::uint64_t>& n_grid) {
    std::vector<double> ratios;
    ratios.reserve(n_grid.size());
    for (std::uint64_t n : n_grid) {
        ratios.push_back(uniform_s_squared_closed_form(gamma, n, r) /
                         uniform_s_squared_equivalent(gamma, n, r));
    }
    return ratios;
}

namespace {

// Truncated sum of h_{n,eta}(l) = e^{-x} x^eta with x = n (e^{1/a}-1) e^{-l/a}.
// Past the mode (x < eta) the tail is dominated by the geometric series of
// x^eta with ratio e^{-eta/a}.
double h_sum(double a, double eta, std::uint64_t n) {
    double decay = std::exp(-1.0 / a);
    double x = static_cast<double>(n) * std::expm1(1.0 / a) * decay;  // l = 1
    double ratio_eta = std::pow(decay, eta);
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t l = 1; l < (1ull << 40); ++l) {
        double term = std::exp(-x) * std::pow(x, eta);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double tail_bound = std::pow(x, eta) * ratio_eta / (1.0 - ratio_eta);
        if (x < eta && tail_bound < std::max(1e-12 * sum, 1e-18)) break;
        x *= decay;
    }
    return sum;
}

}  // namespace

double geometric_s_squared_truncated(double a, std::uint64_t n, std::uint64_t r) {
    if (!(a > 0.0) || n < 1) {
        throw std::domain_error("geometric_s_squared_truncated: require a > 0, n >= 1");
    }
    double rp1 = static_cast<double>(r + 1);
    return (rp1 * h_sum(a, rp1, n) + h_sum(a, rp1 + 1.0, n)) / factorial(r);
}

GeometricBounds geometric_bounds(double a, std::uint64_t r) {
    if (!(a >= 0.0)) throw std::domain_error("geometric_bounds: a must be nonnegative");
    double rp1 = static_cast<double>(r + 1);
    double rp2 = static_cast<double>(r + 2);
    double peak1 = std::pow(rp1, rp1) * std::exp(-rp1);
    double peak2 = std::pow(rp2, rp2) * std::exp(-rp2);
    GeometricBounds b;
    b.lower = 2.0 * std::max(0.0, a * rp1 - peak1 - peak2);
    b.upper = 2.0 * (a * rp1 + peak1 + peak2);
    return b;
}

double geometric_gamma_limit_ratio(double a_n, double eta, std::uint64_t n) {
    if (!(a_n > 0.0) || !(eta > 0.0)) {
        throw std::domain_error("geometric_gamma_limit_ratio: require a_n > 0, eta > 0");
    }
    return h_sum(a_n, eta, n) / (a_n * gamma_function(eta));
}

}  // namespace turingci
