#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace polyvis::harness {

/// Portable seeded generator. The engine is mt19937_64, whose output sequence is fixed
/// by the standard; the variate transforms below are written out explicitly because the
/// standard library distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t Bits() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

    /// Uniform integer in [0, n); n > 0. Rejection keeps it unbiased.
    std::uint64_t Index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    /// Standard normal variate, Box-Muller (cosine branch only, one variate per call).
    double Normal() {
        double u1 = 1.0 - Uniform(); // (0, 1]
        double u2 = Uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace polyvis::harness
