#include "turingci/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace turingci {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Acklam's rational approximation to the inverse normal CDF,
// accurate to ~1.15e-9 before refinement.
double inverse_normal_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

constexpr double kSqrt2Pi = 2.5066282746310005024;

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: p must be in (0,1)");
    }
    double x = inverse_normal_approx(p);
    // One Halley step against the CDF.
    double e = normal_cdf(x) - p;
    double pdf = std::exp(-0.5 * x * x) / kSqrt2Pi;
    if (pdf > 0.0) {
        double u = e / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double gamma_function(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_function: x must be positive");
    }
    return std::tgamma(x);
}

namespace {

// Series expansion for P(s,x), converges quickly for x < s + 1.
double lower_gamma_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Continued fraction for Q(s,x) = 1 - P(s,x), for x >= s + 1.
double upper_gamma_cf(double s, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
    if (!(s > 0.0)) {
        throw std::domain_error("regularized_lower_gamma: s must be positive");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("regularized_lower_gamma: x must be nonnegative");
    }
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) {
        return lower_gamma_series(s, x);
    }
    return 1.0 - upper_gamma_cf(s, x);
}

double chi_squared_cdf(double x, double df) {
    if (!(df > 0.0)) {
        throw std::domain_error("chi_squared_cdf: df must be positive");
    }
    if (x <= 0.0) return 0.0;
    return regularized_lower_gamma(0.5 * df, 0.5 * x);
}

double chi_squared_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("chi_squared_quantile: p must be in (0,1)");
    }
    if (!(df > 0.0)) {
        throw std::domain_error("chi_squared_quantile: df must be positive");
    }

    // Wilson-Hilferty cube approximation as the starting point.
    double z = normal_quantile(p);
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    double x = df * t * t * t;
    if (!(x > 0.0) || !std::isfinite(x)) x = df;

    // Establish a bracket around the root.
    double lo = 0.0, hi = x;
    while (chi_squared_cdf(hi, df) < p) {
        lo = hi;
        hi = hi > 0.0 ? hi * 2.0 : 1.0;
        if (hi > 1e300) break;
    }
    if (chi_squared_cdf(x, df) > p) {
        lo = 0.0;
    } else {
        lo = std::max(lo, 0.0);
    }
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

    const double s = 0.5 * df;
    const double lg = std::lgamma(s);
    for (int it = 0; it < 200; ++it) {
        double f = chi_squared_cdf(x, df) - p;
        if (f > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        if (std::fabs(f) < 1e-14) break;
        // Chi-squared density at x.
        double logpdf = (s - 1.0) * std::log(0.5 * x) - 0.5 * x - lg - std::log(2.0);
        double pdf = std::exp(logpdf);
        double step = pdf > 0.0 ? f / pdf : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi) || step == 0.0) {
            next = 0.5 * (lo + hi);  // fall back to bisection
        }
        if (std::fabs(next - x) < 1e-12 * (1.0 + x)) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

}  // namespace turingci
