#include "turingci/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace turingci {

SampleProfile SampleProfile::from_sample(std::span<const LetterId> sample) {
    if (sample.empty()) {
        throw std::domain_error("build_profile: sample must be nonempty");
    }
    std::unordered_map<LetterId, std::uint64_t> counts;
    counts.reserve(sample.size());
    for (LetterId letter : sample) {
        ++counts[letter];
    }
    return from_counts(std::move(counts));
}

SampleProfile SampleProfile::from_counts(
    std::unordered_map<LetterId, std::uint64_t> counts) {
    if (counts.empty()) {
        throw std::domain_error("build_profile: sample must be nonempty");
    }
    SampleProfile p;
    p.letter_counts_ = std::move(counts);
    for (const auto& [letter, y] : p.letter_counts_) {
        p.n_ += y;
        ++p.occupancy_[y];
    }
    return p;
}

std::uint64_t SampleProfile::letter_count(LetterId letter) const {
    auto it = letter_counts_.find(letter);
    return it == letter_counts_.end() ? 0 : it->second;
}

std::uint64_t SampleProfile::occupancy(std::uint64_t r) const {
    auto it = occupancy_.find(r);
    return it == occupancy_.end() ? 0 : it->second;
}

double turing_estimate(const SampleProfile& profile, std::uint64_t r) {
    if (r + 1 > profile.n()) {
        throw std::domain_error("turing_estimate: require r <= n-1");
    }
    double num = static_cast<double>(r + 1) *
                 static_cast<double>(profile.occupancy(r + 1));
    return num / static_cast<double>(profile.n());
}

double modified_turing_estimate(const SampleProfile& profile, std::uint64_t r) {
    if (r >= profile.n()) {
        throw std::domain_error("modified_turing_estimate: require r < n");
    }
    double num = static_cast<double>(r + 1) *
                 static_cast<double>(profile.occupancy(r + 1));
    return num / static_cast<double>(profile.n() - r);
}

double sd_estimate(const SampleProfile& profile, std::uint64_t r) {
    if (r + 2 > profile.n()) {
        throw std::domain_error("sd_estimate: require r <= n-2");
    }
    double rp1 = static_cast<double>(r + 1);
    double rp2 = static_cast<double>(r + 2);
    double v = rp1 * rp1 * static_cast<double>(profile.occupancy(r + 1)) +
               rp2 * rp1 * static_cast<double>(profile.occupancy(r + 2));
    return std::sqrt(v);
}

}  // namespace turingci
