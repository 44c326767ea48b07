#pragma once

#include <cstdint>

#include "sjlt/alphabet.hpp"
#include "sjlt/family.hpp"

namespace sjlt {

// Geometry of the transform: an implicit m x u matrix with s nonzeros of
// magnitude 1/sqrt(s) per column, laid out as s blocks of m/s = 2^r rows.
struct SjltParams {
    std::uint64_t u = 0;
    std::uint64_t m = 0;
    std::uint32_t s = 1;
    double epsilon = 0.0;
    double delta = 0.0;

    int bucket_bits() const;          // log2(m/s)
    std::uint64_t rows_per_block() const { return m / s; }
    void validate() const;            // s | m, m/s a power of two, eps/delta in (0,1)
};

// Rounds eps/delta-driven target dimension and sparsity up to the layout's
// admissible values: s = ceil(cs * eps^-1 * ln(1/delta)), m the smallest
// s * 2^k >= cm * eps^-2 * ln(1/delta). The defaults cm = 4, cs = 2 are
// practical constants validated by the experiment suite, not the (hugely
// conservative) constants the existence proofs use.
SjltParams suggest_params(double epsilon, double delta, FamilyKind kind,
                          const Alphabet& alphabet, double cm = 4.0, double cs = 2.0);

} // namespace sjlt
