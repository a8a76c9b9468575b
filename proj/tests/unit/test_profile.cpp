#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "turingci/profile.hpp"

using namespace turingci;

namespace {

const std::vector<LetterId> kAabc{1, 1, 2, 3};  // [a,a,b,c]

}  // namespace

TEST_CASE("build_profile counts letters and occupancies") {
    SampleProfile p = SampleProfile::from_sample(kAabc);
    CHECK(p.n() == 4);
    CHECK(p.letter_count(1) == 2);
    CHECK(p.letter_count(2) == 1);
    CHECK(p.letter_count(3) == 1);
    CHECK(p.letter_count(99) == 0);
    CHECK(p.occupancy(1) == 2);
    CHECK(p.occupancy(2) == 1);
    CHECK(p.occupancy(3) == 0);
    CHECK(p.distinct_letters() == 3);

    SampleProfile single = SampleProfile::from_sample(std::vector<LetterId>{7});
    CHECK(single.n() == 1);
    CHECK(single.occupancy(1) == 1);

    SampleProfile triple = SampleProfile::from_sample(std::vector<LetterId>{5, 5, 5});
    CHECK(triple.n() == 3);
    CHECK(triple.occupancy(3) == 1);
    CHECK(triple.occupancy(1) == 0);
    CHECK(triple.occupancy(2) == 0);
}

TEST_CASE("build_profile rejects empty input") {
    CHECK_THROWS_AS(SampleProfile::from_sample(std::vector<LetterId>{}),
                    std::domain_error);
    CHECK_THROWS_AS(
        SampleProfile::from_counts(std::unordered_map<LetterId, std::uint64_t>{}),
        std::domain_error);
}

TEST_CASE("profile invariants on random samples") {
    std::mt19937_64 gen(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<std::uint64_t> size_dist(1, 300);
        std::uniform_int_distribution<LetterId> letter_dist(1, 40);
        std::vector<LetterId> sample(size_dist(gen));
        for (auto& s : sample) s = letter_dist(gen);
        SampleProfile p = SampleProfile::from_sample(sample);

        std::uint64_t letter_sum = 0;
        for (const auto& [letter, y] : p.letter_counts()) letter_sum += y;
        CHECK(letter_sum == p.n());

        std::uint64_t weighted = 0, distinct = 0;
        for (const auto& [r, N] : p.occupancy_map()) {
            CHECK(N > 0);  // no zero entries stored
            weighted += r * N;
            distinct += N;
        }
        CHECK(weighted == p.n());
        CHECK(distinct == p.distinct_letters());
    }
}

TEST_CASE("turing_estimate examples and range") {
    SampleProfile p = SampleProfile::from_sample(kAabc);
    CHECK(turing_estimate(p, 0) == doctest::Approx(0.5));
    CHECK(turing_estimate(p, 1) == doctest::Approx(0.5));
    CHECK(turing_estimate(p, 2) == 0.0);
    CHECK(turing_estimate(p, 3) == 0.0);  // r = n-1 allowed
    CHECK_THROWS_AS(turing_estimate(p, 4), std::domain_error);
}

TEST_CASE("turing_estimate is permutation invariant") {
    std::vector<LetterId> sample{4, 4, 9, 1, 1, 1, 2};
    SampleProfile p1 = SampleProfile::from_sample(sample);
    std::mt19937_64 gen(99);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(sample.begin(), sample.end(), gen);
        SampleProfile p2 = SampleProfile::from_sample(sample);
        for (std::uint64_t r = 0; r < sample.size(); ++r) {
            CHECK(turing_estimate(p1, r) == turing_estimate(p2, r));
        }
    }
}

TEST_CASE("modified_turing_estimate examples") {
    SampleProfile p = SampleProfile::from_sample(kAabc);
    CHECK(modified_turing_estimate(p, 0) == doctest::Approx(0.5));
    CHECK(modified_turing_estimate(p, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(modified_turing_estimate(p, 2) == 0.0);
    CHECK(modified_turing_estimate(p, 1) ==
          doctest::Approx(turing_estimate(p, 1) * 4.0 / 3.0));
    CHECK_THROWS_AS(modified_turing_estimate(p, 4), std::domain_error);
}

TEST_CASE("sd_estimate examples and lower bound") {
    SampleProfile p = SampleProfile::from_sample(kAabc);
    CHECK(sd_estimate(p, 0) == doctest::Approx(2.0));  // sqrt(1*2 + 2*1*1)
    CHECK(sd_estimate(p, 1) == doctest::Approx(2.0));  // sqrt(4*1 + 6*0)
    CHECK_THROWS_AS(sd_estimate(p, 3), std::domain_error);

    SampleProfile triple = SampleProfile::from_sample(std::vector<LetterId>{5, 5, 5});
    CHECK(sd_estimate(triple, 0) == 0.0);

    std::mt19937_64 gen(7);
    std::uniform_int_distribution<LetterId> letter_dist(1, 15);
    std::vector<LetterId> sample(120);
    for (auto& s : sample) s = letter_dist(gen);
    SampleProfile q = SampleProfile::from_sample(sample);
    for (std::uint64_t r = 0; r + 2 <= q.n(); ++r) {
        double rp1 = static_cast<double>(r + 1);
        CHECK(sd_estimate(q, r) >=
              rp1 * std::sqrt(static_cast<double>(q.occupancy(r + 1))) - 1e-12);
    }
}
