#pragma once
// k-wise independent hashing by a random degree q-1 polynomial over a prime
// field, evaluated with Horner's rule. The default prime is the Mersenne
// prime 2^61 - 1, which admits a shift-and-add reduction.

#include <cstdint>
#include <string>
#include <vector>

#include "sjlt/error.hpp"
#include "sjlt/mixed_tabulation.hpp" // BucketSign
#include "sjlt/rng.hpp"

namespace sjlt {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

class PolynomialHash {
public:
    PolynomialHash() = default;

    // q uniform coefficients in [0, prime); independence degree = q.
    static PolynomialHash build(std::uint32_t q, std::uint64_t seed,
                                std::uint64_t prime = kMersenne61) {
        if (q < 1)
            throw ConfigError("polynomial hash: need at least one coefficient");
        if (prime < 2 || prime >= (std::uint64_t{1} << 62))
            throw ConfigError("polynomial hash: prime must be in [2, 2^62)");
        PolynomialHash h;
        h.prime_ = prime;
        h.seed_ = seed;
        h.coeffs_.resize(q);
        SplitMix64 rng(derive_seed(seed, 0));
        for (auto& a : h.coeffs_) a = rng.next_below(prime);
        return h;
    }

    static PolynomialHash from_coefficients(std::vector<std::uint64_t> coeffs,
                                            std::uint64_t prime = kMersenne61,
                                            std::uint64_t seed = 0) {
        if (coeffs.empty())
            throw ConfigError("polynomial hash: need at least one coefficient");
        for (std::uint64_t a : coeffs)
            if (a >= prime) throw DataError("polynomial hash: coefficient >= prime");
        PolynomialHash h;
        h.prime_ = prime;
        h.seed_ = seed;
        h.coeffs_ = std::move(coeffs);
        return h;
    }

    // Horner evaluation of sum a_j x^j mod prime, x < prime.
    std::uint64_t operator()(std::uint64_t x) const {
        if (x >= prime_)
            throw DataError("polynomial hash: input " + std::to_string(x) +
                            " >= prime " + std::to_string(prime_));
        return eval_unchecked(x);
    }

    std::uint64_t eval_unchecked(std::uint64_t x) const {
        if (prime_ == kMersenne61) return eval_mersenne61(x);
        using u128 = unsigned __int128;
        std::uint64_t acc = coeffs_.back();
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;)
            acc = static_cast<std::uint64_t>(
                (static_cast<u128>(acc) * x + coeffs_[j]) % prime_);
        return acc;
    }

    std::uint32_t degree_plus_one() const {
        return static_cast<std::uint32_t>(coeffs_.size());
    }
    std::uint64_t prime() const { return prime_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }

    bool operator==(const PolynomialHash& other) const {
        return prime_ == other.prime_ && coeffs_ == other.coeffs_;
    }

private:
    std::uint64_t eval_mersenne61(std::uint64_t x) const {
        using u128 = unsigned __int128;
        std::uint64_t acc = coeffs_.back();
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
            const u128 prod = static_cast<u128>(acc) * x + coeffs_[j];
            // Fold high and low 61-bit halves; the sum is < 2^62, so up to
            // two subtractions bring it below the prime.
            acc = static_cast<std::uint64_t>(prod & kMersenne61) +
                  static_cast<std::uint64_t>(prod >> 61);
            if (acc >= kMersenne61) acc -= kMersenne61;
            if (acc >= kMersenne61) acc -= kMersenne61;
        }
        return acc;
    }

    std::uint64_t prime_ = kMersenne61;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> coeffs_;
};

// (block, key) pairs encoded as i*u + key and fed through one polynomial;
// the low bucket_bits of the value are the bucket, the next bit the sign.
class PolynomialFamily {
public:
    PolynomialFamily() = default;

    static PolynomialFamily build(std::uint64_t universe, std::uint32_t blocks,
                                  int bucket_bits, std::uint32_t q,
                                  std::uint64_t seed,
                                  std::uint64_t prime = kMersenne61) {
        if (blocks < 1) throw ConfigError("polynomial family: blocks must be >= 1");
        if (universe < 1) throw ConfigError("polynomial family: empty universe");
        if (bucket_bits < 1 || bucket_bits > 32)
            throw ConfigError("polynomial family: bucket_bits must be in [1, 32]");
        using u128 = unsigned __int128;
        if (static_cast<u128>(blocks) * universe > prime)
            throw ConfigError("polynomial family: blocks*universe exceeds the field");
        PolynomialFamily f;
        f.poly_ = PolynomialHash::build(q, seed, prime);
        f.universe_ = universe;
        f.blocks_ = blocks;
        f.bucket_bits_ = bucket_bits;
        return f;
    }

    static PolynomialFamily from_polynomial(PolynomialHash poly, std::uint64_t universe,
                                            std::uint32_t blocks, int bucket_bits) {
        using u128 = unsigned __int128;
        if (blocks < 1 || universe < 1 ||
            static_cast<u128>(blocks) * universe > poly.prime())
            throw ConfigError("polynomial family: blocks*universe exceeds the field");
        if (bucket_bits < 1 || bucket_bits > 32 ||
            (std::uint64_t{1} << (bucket_bits + 1)) > poly.prime())
            throw ConfigError("polynomial family: bucket_bits too large for the field");
        PolynomialFamily f;
        f.poly_ = std::move(poly);
        f.universe_ = universe;
        f.blocks_ = blocks;
        f.bucket_bits_ = bucket_bits;
        return f;
    }

    BucketSign eval(std::uint32_t i, std::uint64_t key) const {
        if (i >= blocks_)
            throw DataError("polynomial family: block index out of range");
        if (key >= universe_)
            throw DataError("polynomial family: key out of range");
        const std::uint64_t value =
            poly_.eval_unchecked(static_cast<std::uint64_t>(i) * universe_ + key);
        return extract(value);
    }

    void eval_blocks(std::uint64_t key, std::span<BucketSign> out) const {
        if (key >= universe_)
            throw DataError("polynomial family: key out of range");
        for (std::uint32_t i = 0; i < blocks_; ++i)
            out[i] = extract(poly_.eval_unchecked(
                static_cast<std::uint64_t>(i) * universe_ + key));
    }

    std::uint32_t blocks() const { return blocks_; }
    int bucket_bits() const { return bucket_bits_; }
    std::uint64_t universe() const { return universe_; }
    const PolynomialHash& polynomial() const { return poly_; }

private:
    BucketSign extract(std::uint64_t value) const {
        const std::uint64_t mask = (std::uint64_t{1} << bucket_bits_) - 1;
        return {static_cast<std::uint32_t>(value & mask),
                ((value >> bucket_bits_) & 1) ? -1 : +1};
    }

    PolynomialHash poly_;
    std::uint64_t universe_ = 0;
    std::uint32_t blocks_ = 0;
    int bucket_bits_ = 0;
};

} // namespace sjlt
