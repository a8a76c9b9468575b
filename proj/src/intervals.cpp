#include "turingci/intervals.hpp"

#include <cmath>
#include <stdexcept>

#include "turingci/numerics.hpp"

namespace turingci {

const char* method_name(CIMethod method) {
    switch (method) {
        case CIMethod::Normal: return "normal";
        case CIMethod::NormalRatio: return "normal_ratio";
        case CIMethod::Poisson: return "poisson";
        case CIMethod::Esty: return "esty";
        case CIMethod::Heuristic: return "heuristic";
    }
    return "?";
}

CIMethod parse_method(const std::string& name) {
    if (name == "normal") return CIMethod::Normal;
    if (name == "normal_ratio" || name == "ratio") return CIMethod::NormalRatio;
    if (name == "poisson") return CIMethod::Poisson;
    if (name == "esty") return CIMethod::Esty;
    if (name == "heuristic") return CIMethod::Heuristic;
    throw std::invalid_argument("unknown CI method: " + name);
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("confidence alpha must be in (0,1)");
    }
}

Interval point_zero(CIMethod method) {
    Interval ci;
    ci.method = method;
    ci.degenerate_point = true;
    return ci;
}

// Clip [lo, hi] to [0,1], keeping the raw bounds and flags.
Interval clipped(CIMethod method, double lo, double hi) {
    Interval ci;
    ci.method = method;
    ci.unclipped_lower = lo;
    ci.unclipped_upper = hi;
    if (lo <= 0.0) {
        ci.lower = 0.0;
        ci.clipped_low = lo < 0.0;
    } else {
        ci.lower = lo;
    }
    if (hi >= 1.0) {
        ci.upper = 1.0;
        ci.clipped_high = hi > 1.0;
    } else {
        ci.upper = hi;
    }
    return ci;
}

}  // namespace

Interval normal_ci(double T, double s_hat, std::uint64_t n, double alpha) {
    check_alpha(alpha);
    if (n < 1) throw std::domain_error("normal_ci: n must be >= 1");
    if (s_hat == 0.0) return point_zero(CIMethod::Normal);
    double z = normal_quantile(1.0 - alpha / 2.0);
    double half = z * s_hat / static_cast<double>(n);
    return clipped(CIMethod::Normal, T - half, T + half);
}

Interval normal_ratio_ci(double T, double s_hat, std::uint64_t n, double alpha) {
    check_alpha(alpha);
    if (n < 1) throw std::domain_error("normal_ratio_ci: n must be >= 1");
    if (T == 0.0) return point_zero(CIMethod::NormalRatio);
    double z = normal_quantile(1.0 - alpha / 2.0);
    double half = z * s_hat / static_cast<double>(n);
    double lo = T * T / (T + half);
    Interval ci;
    if (T <= half) {
        ci = clipped(CIMethod::NormalRatio, lo, 1.0);
        ci.unclipped_upper = 1.0;
        ci.clipped_high = true;  // upper replaced by 1 per the T <= z*s/n rule
    } else {
        ci = clipped(CIMethod::NormalRatio, lo, T * T / (T - half));
    }
    return ci;
}

Interval poisson_ci(double T, std::uint64_t n, std::uint64_t r, double alpha) {
    check_alpha(alpha);
    if (n < 1) throw std::domain_error("poisson_ci: n must be >= 1");
    if (T < 0.0) throw std::domain_error("poisson_ci: T must be nonnegative");
    double scale = static_cast<double>(r + 1) / (2.0 * static_cast<double>(n));
    double df = 2.0 * static_cast<double>(n) * T / static_cast<double>(r + 1);
    double lo = T == 0.0 ? 0.0 : scale * chi_squared_quantile(alpha / 2.0, df);
    double hi = scale * chi_squared_quantile(1.0 - alpha / 2.0, df + 2.0);
    return clipped(CIMethod::Poisson, lo, hi);
}

Interval esty_ci(double T, double s_hat, std::uint64_t N_next, std::uint64_t n,
                 double alpha) {
    check_alpha(alpha);
    if (n < 1) throw std::domain_error("esty_ci: n must be >= 1");
    double nn = static_cast<double>(N_next);
    double radicand = s_hat * s_hat - nn * nn / static_cast<double>(n);
    if (radicand < -1e-12) {
        throw std::logic_error("esty_ci: negative radicand; inconsistent s_hat and N_next");
    }
    if (radicand < 0.0) radicand = 0.0;
    if (radicand == 0.0 && T == 0.0) {
        Interval ci = point_zero(CIMethod::Esty);
        return ci;
    }
    double z = normal_quantile(1.0 - alpha / 2.0);
    double half = z * std::sqrt(radicand) / static_cast<double>(n);
    Interval ci = clipped(CIMethod::Esty, T - half, T + half);
    ci.degenerate_point = ci.lower == ci.upper;
    return ci;
}

Interval heuristic_ci(double T, double s_hat, std::uint64_t n, std::uint64_t r,
                      const CIConfig& config) {
    if (!(config.V > 0.0)) throw std::domain_error("heuristic_ci: V must be positive");
    Interval ci;
    if (s_hat < config.V) {
        ci = poisson_ci(T, n, r, config.alpha);
        ci.chosen_method = CIMethod::Poisson;
    } else {
        ci = normal_ci(T, s_hat, n, config.alpha);
        ci.chosen_method = CIMethod::Normal;
    }
    ci.method = CIMethod::Heuristic;
    return ci;
}

}  // namespace turingci
