#pragma once

#include <array>
#include <cstdint>

namespace cubei {

// Seeded, reproducible 64-bit generator: xoshiro256++ with splitmix64 state
// expansion. Identical seeds produce identical streams on every platform;
// doubles are drawn by the fixed 53-bit mapping below, so estimates are
// bit-for-bit reproducible for a given seed and kernel backend.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_;
};

// Deterministic per-block stream: blocks of a Monte Carlo run are seeded by
// (seed, block index, stream tag), independent of how blocks are scheduled
// across threads.
inline Xoshiro256pp block_rng(std::uint64_t seed, std::uint64_t block, std::uint64_t tag = 0) {
    std::uint64_t sm = seed;
    const std::uint64_t a = splitmix64(sm);
    sm = a ^ (0xA0761D6478BD642Full + block);
    const std::uint64_t b = splitmix64(sm);
    sm = b ^ (0xE7037ED1A0B428DBull + tag);
    return Xoshiro256pp(splitmix64(sm));
}

}  // namespace cubei
