#pragma once

#include <cmath>
#include <cstdint>

namespace opent {

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the state advances by a
// fixed odd increment and each output is a bijective scramble of the counter,
// so streams seeded at seed ^ k are cheap independent substreams. All floating
// draws are derived from the 64-bit output alone; results are bit-reproducible
// across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // exp(uniform(log a, log b)); requires 0 < a <= b.
    double log_uniform(double a, double b) {
        if (a == b) return a;
        return std::exp(uniform(std::log(a), std::log(b)));
    }

    // Standard normal via Box-Muller on two fresh uniforms. The second variate
    // is discarded to keep the draw count per call fixed.
    double gaussian() {
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 == 0.0);
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Substream for one trial of a seeded campaign.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index) {
    return SplitMix64(seed ^ trial_index);
}

}  // namespace opent
