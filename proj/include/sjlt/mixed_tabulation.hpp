#pragma once
// Mixed tabulation hashing: h(x) = h1(x) ^ h3(h2(x)) where h2 produces d
// derived characters that h3 re-hashes, plus the block extension used by the
// sparse JL transform: block i is folded in by xor'ing i into every derived
// character, giving h(i,x) = h1(x) ^ h3(h2(x) ^ (i,...,i)) and
// sign(i,x) = sigma1(x) * sigma3(h2(x) ^ (i,...,i)).

#include <cstdint>
#include <span>
#include <string>

#include "sjlt/alphabet.hpp"
#include "sjlt/error.hpp"
#include "sjlt/simple_tabulation.hpp"

namespace sjlt {

struct BucketSign {
    std::uint32_t bucket = 0;
    std::int32_t sign = 1;
};

class MixedTabulation {
public:
    MixedTabulation() = default;

    // Component streams are derived independently from the master seed:
    // h1 <- 0, h2 <- 1, h3 <- 2, sigma1 <- 3, sigma3 <- 4.
    static MixedTabulation build(const Alphabet& alphabet, int out_bits,
                                 std::uint64_t seed) {
        alphabet.validate(/*require_derived=*/true);
        MixedTabulation h;
        h.seed_ = seed;
        Alphabet keys = alphabet;
        Alphabet derived{alphabet.char_bits, alphabet.derived_d, 0};
        h.h1_ = SimpleTabulation::build(keys, out_bits, derive_seed(seed, 0));
        h.h2_ = SimpleTabulation::build(keys, alphabet.derived_d * alphabet.char_bits,
                                        derive_seed(seed, 1));
        h.h3_ = SimpleTabulation::build(derived, out_bits, derive_seed(seed, 2));
        h.sigma1_ = SignTable::build(keys, derive_seed(seed, 3));
        h.sigma3_ = SignTable::build(derived, derive_seed(seed, 4));
        return h;
    }

    static MixedTabulation from_components(SimpleTabulation h1, SimpleTabulation h2,
                                           SimpleTabulation h3, SignTable sigma1,
                                           SignTable sigma3, std::uint64_t seed = 0) {
        MixedTabulation h;
        const Alphabet& keys = h1.alphabet();
        const Alphabet& derived = h3.alphabet();
        if (h2.alphabet().c != keys.c || h2.alphabet().char_bits != keys.char_bits ||
            h2.out_bits() != derived.c * derived.char_bits ||
            derived.char_bits != keys.char_bits || h3.out_bits() != h1.out_bits())
            throw ConfigError("mixed tabulation: component shapes do not agree");
        h.h1_ = std::move(h1);
        h.h2_ = std::move(h2);
        h.h3_ = std::move(h3);
        h.sigma1_ = std::move(sigma1);
        h.sigma3_ = std::move(sigma3);
        h.seed_ = seed;
        return h;
    }

    std::uint64_t operator()(std::uint64_t key) const {
        check_key(key);
        return hash_unchecked(key);
    }

    std::uint64_t hash_unchecked(std::uint64_t key) const {
        return h1_.hash_unchecked(key) ^ h3_.hash_unchecked(h2_.hash_unchecked(key));
    }

    const Alphabet& alphabet() const { return h1_.alphabet(); }
    int derived_d() const { return h3_.alphabet().c; }
    int out_bits() const { return h1_.out_bits(); }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t universe() const { return h1_.universe(); }

    const SimpleTabulation& h1() const { return h1_; }
    const SimpleTabulation& h2() const { return h2_; }
    const SimpleTabulation& h3() const { return h3_; }
    const SignTable& sigma1() const { return sigma1_; }
    const SignTable& sigma3() const { return sigma3_; }

    void check_key(std::uint64_t key) const {
        if (alphabet().universe_bits() < 64 && key >= universe())
            throw DataError("mixed tabulation: key " + std::to_string(key) +
                            " outside universe of size " + std::to_string(universe()));
    }

    bool operator==(const MixedTabulation& other) const {
        return h1_ == other.h1_ && h2_ == other.h2_ && h3_ == other.h3_ &&
               sigma1_ == other.sigma1_ && sigma3_ == other.sigma3_;
    }

private:
    SimpleTabulation h1_, h2_, h3_;
    SignTable sigma1_, sigma3_;
    std::uint64_t seed_ = 0;
};

// Mixed tabulation extended to the domain [s] x [u] for s CountSketch
// blocks. Requires s <= |Sigma| so a block index fits in one character.
class MixedTabulationFamily {
public:
    MixedTabulationFamily() = default;

    static MixedTabulationFamily build(const Alphabet& alphabet, int out_bits,
                                       std::uint32_t blocks, std::uint64_t seed) {
        return from_base(MixedTabulation::build(alphabet, out_bits, seed), blocks);
    }

    static MixedTabulationFamily from_base(MixedTabulation base, std::uint32_t blocks) {
        if (blocks < 1 || blocks > base.alphabet().sigma())
            throw ConfigError("mixed tabulation family: blocks must be in [1, |Sigma|]");
        if (base.out_bits() > 32)
            throw ConfigError("mixed tabulation family: bucket_bits must be <= 32");
        MixedTabulationFamily f;
        f.base_ = std::move(base);
        f.blocks_ = blocks;
        return f;
    }

    // True when the block count is past sqrt(|Sigma|), the regime the
    // analysis covers; the construction itself still works up to |Sigma|.
    bool blocks_exceed_sqrt_alphabet() const {
        return static_cast<std::uint64_t>(blocks_) * blocks_ > base_.alphabet().sigma();
    }

    BucketSign eval(std::uint32_t i, std::uint64_t key) const {
        check_block(i);
        base_.check_key(key);
        const std::uint64_t derived = base_.h2().hash_unchecked(key) ^ spread_block(i);
        return {static_cast<std::uint32_t>(base_.h1().hash_unchecked(key) ^
                                           base_.h3().hash_unchecked(derived)),
                base_.sigma1().sign_unchecked(key) *
                    base_.sigma3().sign_unchecked(derived)};
    }

    // All blocks of one key; h1, h2 and sigma1 are evaluated once and
    // shared across blocks, and the per-block h3/sigma3 lookups walk the
    // tables directly. Folding the block index into a derived character
    // cannot leave the alphabet since i < blocks <= |Sigma|.
    void eval_blocks(std::uint64_t key, std::span<BucketSign> out) const {
        base_.check_key(key);
        const std::uint64_t h1x = base_.h1().hash_unchecked(key);
        const std::uint64_t h2x = base_.h2().hash_unchecked(key);
        const int s1x = base_.sigma1().sign_unchecked(key);
        const int char_bits = base_.alphabet().char_bits;
        const std::uint64_t char_mask = base_.alphabet().char_mask();
        const std::size_t sigma = base_.alphabet().sigma();
        const int d = base_.derived_d();
        const std::uint64_t* h3_tables = base_.h3().table_words().data();
        const std::uint64_t* s3_tables = base_.sigma3().bits().table_words().data();
        for (std::uint32_t i = 0; i < blocks_; ++i) {
            std::uint64_t bucket = h1x;
            std::uint64_t sign_bit = 0;
            std::uint64_t rest = h2x;
            const std::uint64_t* h3_table = h3_tables;
            const std::uint64_t* s3_table = s3_tables;
            for (int t = 0; t < d; ++t, rest >>= char_bits, h3_table += sigma,
                     s3_table += sigma) {
                const std::uint64_t character = (rest & char_mask) ^ i;
                bucket ^= h3_table[character];
                sign_bit ^= s3_table[character];
            }
            out[i] = {static_cast<std::uint32_t>(bucket),
                      sign_bit ? -s1x : s1x};
        }
    }

    // Block index replicated into each of the d derived character slots.
    std::uint64_t spread_block(std::uint32_t i) const {
        std::uint64_t spread = 0;
        for (int t = 0; t < base_.derived_d(); ++t)
            spread |= static_cast<std::uint64_t>(i)
                      << (t * base_.alphabet().char_bits);
        return spread;
    }

    std::uint32_t blocks() const { return blocks_; }
    int bucket_bits() const { return base_.out_bits(); }
    std::uint64_t universe() const { return base_.universe(); }
    const MixedTabulation& base() const { return base_; }

private:
    void check_block(std::uint32_t i) const {
        if (i >= blocks_)
            throw DataError("mixed tabulation family: block index " +
                            std::to_string(i) + " out of range");
    }

    MixedTabulation base_;
    std::uint32_t blocks_ = 1;
};

} // namespace sjlt
