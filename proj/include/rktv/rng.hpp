#pragma once

// Deterministic pseudo-random numbers for noise injection and parameter
// initialization. The generator is xoshiro256++ (Blackman & Vigna), seeded
// through splitmix64, so that any reimplementation in another language can
// reproduce streams bit-for-bit. A frozen reference sequence lives in
// docs/prng_reference.md and is asserted by the unit tests.

#include <array>
#include <cmath>
#include <cstdint>

namespace rktv {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// splitmix64: used only to expand a 64-bit seed into the xoshiro state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ 1.0
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : state_) s = sm.next();
    }

    explicit Xoshiro256pp(const std::array<std::uint64_t, 4>& state) : state_(state) {}

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl64(state_[3], 45);
        return result;
    }

    // Uniform double strictly inside (0,1): 52 mantissa bits plus a half-ulp
    // offset. Avoids the endpoints so inverse-CDF transforms stay finite.
    double next_double() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Uniform on (-r, r).
    double uniform_symmetric(double r) { return (2.0 * next_double() - 1.0) * r; }

    // Standard normal via the Marsaglia polar method (rejection; consumes a
    // variable number of uniforms, deterministically given the stream).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double v1 = 0.0, v2 = 0.0, s = 0.0;
        do {
            v1 = 2.0 * next_double() - 1.0;
            v2 = 2.0 * next_double() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        have_spare_ = true;
        return v1 * f;
    }

    // Laplace with scale b (variance 2*b^2), via inverse CDF.
    double laplace(double b) {
        const double u = next_double() - 0.5;
        return (u < 0.0 ? b : -b) * std::log1p(-2.0 * std::abs(u));
    }

  private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rktv
