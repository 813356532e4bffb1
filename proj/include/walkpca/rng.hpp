#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace walkpca {

/// SplitMix64 step; used for seeding and for deriving independent substreams.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Substream seed for (seed, index). Streams with distinct indices are
/// statistically independent; same inputs always give the same stream.
inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
    uint64_t s = seed ^ (0x632be59bd9b4e019ull + index * 0x9e3779b97f4a7c15ull);
    splitmix64(s);
    return splitmix64(s);
}

/// xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(uint64_t seed) {
        for (auto& w : state_) w = splitmix64(seed);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1) with 53 random bits (0 mapped to the smallest step).
    double uniform() {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

/// Standard-normal stream via the Marsaglia polar method on xoshiro uniforms.
/// Fully deterministic for a given seed within one build.
class GaussianStream {
  public:
    explicit GaussianStream(uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * rng_.uniform() - 1.0;
            v = 2.0 * rng_.uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    void fill(double* out, size_t count) {
        for (size_t i = 0; i < count; i++) out[i] = next();
    }

  private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace walkpca
