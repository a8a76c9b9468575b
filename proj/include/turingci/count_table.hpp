#pragma once

// Open-addressing counting table keyed by letter id. The simulation harness
// pushes up to 10^7 distinct letters per replication, so this avoids the
// node allocations of std::unordered_map in the hot loop. Key 0 marks an
// empty slot; letter ids are 1-based so no sentinel clash is possible.

#include <cstdint>
#include <vector>

namespace turingci {

class CountTable {
public:
    explicit CountTable(std::size_t expected = 16) { rehash_for(expected); }

    void increment(std::uint64_t key) {
        if ((size_ + 1) * 10 > capacity_ * 6) grow();
        std::size_t idx = probe(key);
        if (keys_[idx] == 0) {
            keys_[idx] = key;
            vals_[idx] = 1;
            ++size_;
        } else {
            ++vals_[idx];
        }
    }

    std::size_t distinct() const { return size_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < capacity_; ++i) {
            if (keys_[i] != 0) fn(keys_[i], vals_[i]);
        }
    }

    void clear() {
        std::fill(keys_.begin(), keys_.end(), 0);
        size_ = 0;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::size_t probe(std::uint64_t key) const {
        std::size_t idx = mix(key) & mask_;
        while (keys_[idx] != 0 && keys_[idx] != key) {
            idx = (idx + 1) & mask_;
        }
        return idx;
    }

    void rehash_for(std::size_t expected) {
        std::size_t cap = 32;
        while (cap * 6 < expected * 10) cap <<= 1;
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        capacity_ = cap;
        mask_ = cap - 1;
    }

    void grow() {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<std::uint32_t> old_vals = std::move(vals_);
        std::size_t old_cap = capacity_;
        rehash_for(size_ * 2 + 16);
        for (std::size_t i = 0; i < old_cap; ++i) {
            if (old_keys[i] != 0) {
                std::size_t idx = probe(old_keys[i]);
                keys_[idx] = old_keys[i];
                vals_[idx] = old_vals[i];
            }
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t capacity_ = 0;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

}  // namespace turingci
