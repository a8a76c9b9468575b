#pragma once

// Reproducible parallel random streams. Two streams with the same
// (master_seed, stream_index) produce identical draw sequences; distinct
// stream indices give statistically independent sequences.

#include <cstdint>
#include <random>

namespace turingci {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    std::mt19937_64 make_engine() const {
        std::uint64_t s = master_seed ^ (stream_index * 0xD6E8FEB86659FD93ull);
        std::uint64_t w0 = splitmix64(s), w1 = splitmix64(s);
        std::uint64_t w2 = splitmix64(s), w3 = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                          static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                          static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                          static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
        return std::mt19937_64(seq);
    }
};

// Uniform draw on the open interval (0,1); never returns 0 or 1.
inline double uniform_open01(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

}  // namespace turingci
