#pragma once

#include <cstdint>

namespace urnlab {

// Deterministic, single-owner random stream: xoshiro256** seeded through
// splitmix64. Replica streams are derived by mixing (master_seed, index)
// through the splitmix finalizer, so any replica can be reproduced in
// isolation without jump-ahead.
class RngStream {
  public:
    explicit RngStream(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    static uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
        uint64_t z = master_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
        z = mix64(z + 0x9E3779B97F4A7C15ULL);
        return mix64(z ^ master_seed);
    }

    static RngStream for_replica(uint64_t master_seed, uint64_t index) {
        return RngStream(derive_seed(master_seed, index));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform double in [0, 1), 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), exact (rejection, no modulo bias)
    uint64_t next_below(uint64_t bound) {
        if (bound == 0) return 0;
        const uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const uint64_t r = next_u64();
            const unsigned __int128 prod = static_cast<unsigned __int128>(r) * bound;
            if (static_cast<uint64_t>(prod) >= threshold)
                return static_cast<uint64_t>(prod >> 64);
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static uint64_t mix64(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static uint64_t splitmix64(uint64_t& s) {
        s += 0x9E3779B97F4A7C15ULL;
        return mix64(s);
    }

    uint64_t state_[4];
};

}  // namespace urnlab
