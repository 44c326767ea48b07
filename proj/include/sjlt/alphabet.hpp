#pragma once

#include <cstdint>
#include <string>

#include "sjlt/error.hpp"

namespace sjlt {

// Character structure of the key universe: keys in [u] are read as c
// characters of char_bits bits each, u = 2^(char_bits*c). derived_d is the
// number of derived characters produced by the second stage of mixed
// tabulation (0 when unused).
struct Alphabet {
    int char_bits = 8;
    int c = 2;
    int derived_d = 0;

    int sigma_bits() const { return char_bits; }
    std::uint64_t sigma() const { return std::uint64_t{1} << char_bits; }
    int universe_bits() const { return char_bits * c; }
    std::uint64_t universe() const { return std::uint64_t{1} << universe_bits(); }
    std::uint64_t char_mask() const { return sigma() - 1; }

    // Character j of key x, little-endian: bits [j*char_bits, (j+1)*char_bits).
    std::uint64_t extract_char(std::uint64_t key, int j) const {
        return (key >> (j * char_bits)) & char_mask();
    }

    void validate(bool require_derived = false) const {
        if (char_bits < 1 || char_bits > 16)
            throw ConfigError("alphabet: char_bits must be in [1, 16], got " +
                              std::to_string(char_bits));
        if (c < 1)
            throw ConfigError("alphabet: c must be >= 1, got " + std::to_string(c));
        if (universe_bits() > 64)
            throw ConfigError("alphabet: char_bits*c must be <= 64, got " +
                              std::to_string(universe_bits()));
        if (derived_d < 0)
            throw ConfigError("alphabet: derived_d must be >= 0");
        if (require_derived && derived_d < 1)
            throw ConfigError("alphabet: mixed tabulation requires derived_d >= 1");
        if (derived_d * char_bits > 64)
            throw ConfigError("alphabet: derived_d*char_bits must be <= 64");
    }
};

} // namespace sjlt
