#pragma once

#include <array>
#include <cstdint>

// Self-contained pseudo-random machinery. Simulation replications need
// streams that depend only on (master_seed, replication_index) so that
// results do not change with the number of worker threads. splitmix64
// derives stream states, xoshiro256** generates the stream.

namespace lsim::rng {

// One splitmix64 step: advances state and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless mix of two words, used for sub-seed derivation.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// xoshiro256** by Blackman & Vigna, public domain reference implementation.
class Stream {
public:
    static Stream seeded(std::uint64_t seed) {
        Stream s;
        std::uint64_t sm = seed;
        for (auto& w : s.state_) w = splitmix64(sm);
        return s;
    }

    // Counter-based derivation: stream k of a run is a pure function of
    // (master_seed, k), independent of which worker draws it.
    static Stream for_replication(std::uint64_t master_seed, std::uint64_t index) {
        return seeded(mix(master_seed, index));
    }

    std::uint64_t next() {
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

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    bool coin() { return (next() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace lsim::rng
