#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fmdil {

// SplitMix64 finalizer (Vigna's reference constants). Integer stages are
// bit-stable on any platform.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Splittable generator: one instance per path/instance, derived from
// (seed, stream) so that parallel and serial runs agree draw-for-draw.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        return mix64(z);
    }

    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }    // [0,1)
    double uniform_pos() { return double((next() >> 11) + 1) * 0x1.0p-53; } // (0,1]
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Box-Muller: deterministic transform of two uniforms, no rejection.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_pos();
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
}

} // namespace fmdil
