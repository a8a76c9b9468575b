#pragma once

// Sample occupancy profiles: per-letter counts y_{l,n} and occupancy counts
// N_{r,n}, plus Turing's estimators and the plug-in sd estimator.

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>

namespace turingci {

using LetterId = std::uint64_t;

// Occupancy profile of one sample of size n. Immutable after construction.
// The occupancy map stores only realized r (N_r > 0); lookups of absent r
// return 0.
class SampleProfile {
public:
    static SampleProfile from_sample(std::span<const LetterId> sample);
    static SampleProfile from_counts(std::unordered_map<LetterId, std::uint64_t> counts);

    std::uint64_t n() const { return n_; }
    std::uint64_t letter_count(LetterId letter) const;
    std::uint64_t occupancy(std::uint64_t r) const;
    std::uint64_t distinct_letters() const { return letter_counts_.size(); }

    const std::unordered_map<LetterId, std::uint64_t>& letter_counts() const {
        return letter_counts_;
    }
    const std::map<std::uint64_t, std::uint64_t>& occupancy_map() const {
        return occupancy_;
    }

private:
    SampleProfile() = default;

    std::uint64_t n_ = 0;
    std::unordered_map<LetterId, std::uint64_t> letter_counts_;
    std::map<std::uint64_t, std::uint64_t> occupancy_;
};

// Turing's estimator T_{r,n} = (r+1) N_{r+1,n} / n, valid for 0 <= r <= n-1.
double turing_estimate(const SampleProfile& profile, std::uint64_t r);

// Modified estimator T*_{r,n} = (r+1) N_{r+1,n} / (n-r), valid for 0 <= r < n.
double modified_turing_estimate(const SampleProfile& profile, std::uint64_t r);

// Plug-in sd estimator
// s_hat = sqrt((r+1)^2 N_{r+1,n} + (r+2)(r+1) N_{r+2,n}), 0 <= r <= n-2.
double sd_estimate(const SampleProfile& profile, std::uint64_t r);

}  // namespace turingci
