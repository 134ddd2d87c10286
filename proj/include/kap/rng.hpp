/**
 * Deterministic seeded random draws. Hand-rolled splitmix64 so that the
 * same (topology, N, seed) triple produces identical instances on every
 * platform and toolchain.
 */
#pragma once

#include <complex>
#include <cstdint>

namespace kap {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1,1] with |value| >= floor (resampled), the seeded
    /// stand-in for a generic coefficient.
    double next_generic(double floor = 1e-3) {
        for (;;) {
            double v = 2.0 * next_unit() - 1.0;
            if (v >= floor || v <= -floor) return v;
        }
    }

    std::complex<double> next_generic_complex(double floor = 1e-3) {
        double re = next_generic(floor);
        double im = next_generic(floor);
        return {re, im};
    }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t limit = ~0ULL - ~0ULL % bound;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace kap
