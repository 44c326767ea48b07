#pragma once
// SplitMix64: seedable counter-based generator (Steele, Lea & Flood 2014;
// finalizer constants by Vigna). Every table and every Monte Carlo trial in
// this library draws from its own stream derived via derive_seed, so results
// are reproducible regardless of evaluation order or thread count.

#include <cstdint>

namespace sjlt {

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Derive an independent stream seed from (master, index). Used for
// per-table, per-component and per-trial streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64((master + kGolden64) ^ mix64(index * kGolden64 + 1));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += kGolden64);
        return mix64(z);
    }

    // Uniform word masked to the low `bits` bits, bits in [0, 64].
    std::uint64_t next_bits(int bits) {
        std::uint64_t word = next();
        if (bits >= 64) return word;
        if (bits <= 0) return 0;
        return word & ((std::uint64_t{1} << bits) - 1);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound) by rejection, bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t word;
        do {
            word = next();
        } while (word >= limit);
        return word % bound;
    }

private:
    std::uint64_t state_;
};

} // namespace sjlt
