#pragma once

// Deterministic randomness for reproducible simulations. Every random
// choice in a run flows from one 64-bit seed through labeled substreams,
// so identical (scenario, seed) pairs replay bit-for-bit.

#include <cstdint>
#include <string_view>

namespace aempc {

// splitmix64: small, fast, and good enough for simulation randomness.
class Rng {
public:
    Rng() : state_(0) {}
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection sampling; bound > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

private:
    uint64_t state_;
};

// Stable label hash (FNV-1a) used to derive independent substreams from
// a run seed, e.g. one stream per party and one per channel pad source.
inline uint64_t hash_label(std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t derive_seed(uint64_t seed, std::string_view label, uint64_t index = 0) {
    Rng mixer(seed ^ hash_label(label) ^ (index * 0x9e3779b97f4a7c15ULL));
    return mixer.next_u64();
}

}  // namespace aempc
