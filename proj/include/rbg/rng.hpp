#pragma once

#include <cstdint>

namespace rbg {

// xoshiro256** by Blackman & Vigna (public domain reference constants).
// All randomness in the project flows through this generator so that
// transcripts replay bit-exactly across platforms.
class Rng {
  public:
    Rng() : Rng(0x9e3779b97f4a7c15ULL) {}

    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        // splitmix64 expansion of the 64-bit seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform value in [0, n) by rejection sampling on the 64-bit output:
    // draw again while the draw falls into the truncated remainder zone.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t zone = (0ULL - n) % n;  // 2^64 mod n
        std::uint64_t draw = next_u64();
        while (draw < zone) draw = next_u64();
        return draw % n;
    }

    // Bernoulli(p) using a 53-bit mantissa draw.
    bool coin(double p) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u < p;
    }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

// Deterministic stream derivation for parallel work: the child seed is a
// splitmix64 hash of (seed, a, b, c), so (cell, trial) tasks never share a stream.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
    std::uint64_t x = seed;
    std::uint64_t h = Rng::splitmix64(x);
    x ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= Rng::splitmix64(x);
    x ^= b + 0xc2b2ae3d27d4eb4fULL;
    h ^= Rng::splitmix64(x);
    x ^= c + 0x165667b19e3779f9ULL;
    h ^= Rng::splitmix64(x);
    return h;
}

}  // namespace rbg
