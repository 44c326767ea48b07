#pragma once
// Simple tabulation hashing: one fully random table per character position,
// hash(x) = T_0[x_0] ^ ... ^ T_{c-1}[x_{c-1}].

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sjlt/alphabet.hpp"
#include "sjlt/error.hpp"
#include "sjlt/rng.hpp"

namespace sjlt {

class SimpleTabulation {
public:
    SimpleTabulation() = default;

    // Fills c tables of |Sigma| uniform out_bits-bit words. Table j draws
    // from the stream derive_seed(seed, j), so identical seeds reproduce
    // identical tables entry for entry.
    static SimpleTabulation build(const Alphabet& alphabet, int out_bits,
                                  std::uint64_t seed) {
        alphabet.validate();
        if (out_bits < 1 || out_bits > 64)
            throw ConfigError("simple tabulation: out_bits must be in [1, 64], got " +
                              std::to_string(out_bits));
        SimpleTabulation h;
        h.alphabet_ = alphabet;
        h.out_bits_ = out_bits;
        h.seed_ = seed;
        const std::size_t sigma = alphabet.sigma();
        h.tables_.resize(static_cast<std::size_t>(alphabet.c) * sigma);
        for (int j = 0; j < alphabet.c; ++j) {
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
            for (std::size_t a = 0; a < sigma; ++a)
                h.tables_[static_cast<std::size_t>(j) * sigma + a] = rng.next_bits(out_bits);
        }
        return h;
    }

    // Adopts explicit table contents (table dumps, exhaustive enumeration).
    static SimpleTabulation from_tables(const Alphabet& alphabet, int out_bits,
                                        std::vector<std::uint64_t> tables,
                                        std::uint64_t seed = 0) {
        alphabet.validate();
        if (out_bits < 1 || out_bits > 64)
            throw ConfigError("simple tabulation: out_bits must be in [1, 64]");
        const std::size_t expected =
            static_cast<std::size_t>(alphabet.c) * alphabet.sigma();
        if (tables.size() != expected)
            throw DataError("simple tabulation: expected " + std::to_string(expected) +
                            " table words, got " + std::to_string(tables.size()));
        const std::uint64_t mask =
            out_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << out_bits) - 1;
        for (std::uint64_t word : tables)
            if ((word & ~mask) != 0)
                throw DataError("simple tabulation: table entry exceeds 2^out_bits");
        SimpleTabulation h;
        h.alphabet_ = alphabet;
        h.out_bits_ = out_bits;
        h.seed_ = seed;
        h.tables_ = std::move(tables);
        return h;
    }

    std::uint64_t operator()(std::uint64_t key) const {
        check_key(key);
        return hash_unchecked(key);
    }

    std::uint64_t hash_unchecked(std::uint64_t key) const {
        const std::uint64_t sigma = alphabet_.sigma();
        const std::uint64_t mask = sigma - 1;
        const std::uint64_t* table = tables_.data();
        std::uint64_t out = 0;
        for (int j = 0; j < alphabet_.c; ++j, key >>= alphabet_.char_bits, table += sigma)
            out ^= table[key & mask];
        return out;
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int out_bits() const { return out_bits_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t universe() const { return alphabet_.universe(); }
    std::span<const std::uint64_t> table_words() const { return tables_; }
    std::uint64_t table_entry(int j, std::uint64_t character) const {
        return tables_[static_cast<std::size_t>(j) * alphabet_.sigma() + character];
    }

    bool operator==(const SimpleTabulation& other) const {
        return alphabet_.char_bits == other.alphabet_.char_bits &&
               alphabet_.c == other.alphabet_.c && out_bits_ == other.out_bits_ &&
               tables_ == other.tables_;
    }

private:
    void check_key(std::uint64_t key) const {
        if (alphabet_.universe_bits() < 64 && key >= alphabet_.universe())
            throw DataError("simple tabulation: key " + std::to_string(key) +
                            " outside universe of size " +
                            std::to_string(alphabet_.universe()));
    }

    Alphabet alphabet_;
    int out_bits_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> tables_;
};

// One-bit tabulation mapped {0,1} -> {+1,-1}. Kept separate from the bucket
// hash: the sign stream and the bucket stream are independent functions.
class SignTable {
public:
    SignTable() = default;

    static SignTable build(const Alphabet& alphabet, std::uint64_t seed) {
        SignTable s;
        s.bits_ = SimpleTabulation::build(alphabet, 1, seed);
        return s;
    }

    static SignTable from_tables(const Alphabet& alphabet,
                                 std::vector<std::uint64_t> tables,
                                 std::uint64_t seed = 0) {
        SignTable s;
        s.bits_ = SimpleTabulation::from_tables(alphabet, 1, std::move(tables), seed);
        return s;
    }

    int operator()(std::uint64_t key) const { return bits_(key) ? -1 : +1; }
    int sign_unchecked(std::uint64_t key) const {
        return bits_.hash_unchecked(key) ? -1 : +1;
    }

    const SimpleTabulation& bits() const { return bits_; }
    bool operator==(const SignTable& other) const { return bits_ == other.bits_; }

private:
    SimpleTabulation bits_;
};

} // namespace sjlt
