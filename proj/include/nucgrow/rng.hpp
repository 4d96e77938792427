#pragma once

#include <cmath>
#include <cstdint>

namespace nucgrow {

// SplitMix64 finalizer. This is the published mixing function behind all
// seed derivation: derived streams depend only on 64-bit integer
// arithmetic, so sample tables reproduce across platforms.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27; z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// Derived seed for sub-stream `index` of a base seed. Injective in `index`
// for a fixed base (mix64 is a bijection and kGolden is odd).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base + kGolden * (index + 1));
}

// Counter-based generator (SplitMix64 sequence). Cheap to create, cheap to
// split via derive_seed, and with no warm-up requirements.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform on (0, 1]; never returns 0 so logarithms stay finite.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on [0, 1).
    double next_unit_co() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given MEAN (not rate).
    double exponential(double mean) {
        return -mean * std::log(next_unit());
    }

    // Unbiased uniform integer in [0, bound). Lemire's method with the
    // rejection step.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::int64_t uniform_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return next_unit_co() < p; }

private:
    std::uint64_t state_;
};

}  // namespace nucgrow
