#pragma once

// The five CI constructors with their exact clipping and degeneracy rules.
// All constructors are pure functions of scalar inputs.

#include <cstdint>
#include <optional>
#include <string>

namespace turingci {

enum class CIMethod { Normal, NormalRatio, Poisson, Esty, Heuristic };

const char* method_name(CIMethod method);
CIMethod parse_method(const std::string& name);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    CIMethod method = CIMethod::Normal;
    bool degenerate_point = false;
    bool clipped_low = false;
    bool clipped_high = false;
    std::optional<CIMethod> chosen_method;  // set by the heuristic rule
    // Bounds before clipping to [0,1]; used for diagnostic width columns.
    double unclipped_lower = 0.0;
    double unclipped_upper = 0.0;

    double width() const { return upper - lower; }
    double unclipped_width() const { return unclipped_upper - unclipped_lower; }
    bool contains(double value) const {
        return value >= lower && value <= upper;
    }
};

struct CIConfig {
    double alpha = 0.05;  // confidence level 1 - alpha
    double V = 2.0;       // heuristic threshold on s_hat
};

// [T -/+ z*s_hat/n], clipped to [0,1]; the point {0} when s_hat = 0.
Interval normal_ci(double T, double s_hat, std::uint64_t n, double alpha);

// [T^2/(T + z*s_hat/n), T^2/(T - z*s_hat/n)]; the point {0} when T = 0;
// upper bound 1 when 0 < T <= z*s_hat/n.
Interval normal_ratio_ci(double T, double s_hat, std::uint64_t n, double alpha);

// Chi-squared interval for the Poisson mean, rescaled by (r+1)/(2n).
// Never degenerates to a point: at T = 0 it is [0, (r+1)/(2n)*chi2(1-a/2,2)].
Interval poisson_ci(double T, std::uint64_t n, std::uint64_t r, double alpha);

// Esty's variant: half-width (z/n)*sqrt(s_hat^2 - N_next^2/n), where N_next
// is the occupancy count N_{r+1,n}. Clipping as for the Normal CI.
Interval esty_ci(double T, double s_hat, std::uint64_t N_next, std::uint64_t n,
                 double alpha);

// Poisson CI when s_hat < V, otherwise the Normal CI; chosen_method records
// which branch fired. A tie s_hat = V routes to Normal.
Interval heuristic_ci(double T, double s_hat, std::uint64_t n, std::uint64_t r,
                      const CIConfig& config);

}  // namespace turingci
