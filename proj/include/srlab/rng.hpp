#pragma once

#include <cmath>
#include <cstdint>

namespace srlab {

// Portable, bitwise-reproducible random streams. Work items (trajectories,
// position samples) each get their own stream derived from the master seed:
//   child_seed = splitmix64(splitmix64(master) ^ (index + 1) * 0x9E3779B97F4A7C15)
// so results do not depend on evaluation order or thread count.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

// xoshiro256** seeded through splitmix64 (Blackman & Vigna).
class Xoshiro256ss {
  public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) {
            x = splitmix64(x);
            word = x;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Standard normal variates via the Box-Muller transform (no rejection, so
// the draw count per sample is fixed and streams stay aligned).
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = rng_.uniform();
        const double u2 = rng_.uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

  private:
    Xoshiro256ss rng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

} // namespace srlab
