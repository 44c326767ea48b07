#pragma once
// The four hash/sign families a sketcher can be instantiated with, behind a
// single variant. Each family maps (block i, key x) to a bucket in [2^r]
// and a sign in {-1, +1} and is immutable after construction.

#include <cstdint>
#include <iostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sjlt/alphabet.hpp"
#include "sjlt/error.hpp"
#include "sjlt/mixed_tabulation.hpp"
#include "sjlt/polynomial_hash.hpp"
#include "sjlt/random_oracle.hpp"
#include "sjlt/rng.hpp"
#include "sjlt/simple_tabulation.hpp"

namespace sjlt {

// s independent (hash, sign) simple tabulation pairs, one per CountSketch
// block. With s = 1 this is plain CountSketch.
class SimpleTabulationFamily {
public:
    SimpleTabulationFamily() = default;

    static SimpleTabulationFamily build(const Alphabet& alphabet, int bucket_bits,
                                        std::uint32_t blocks, std::uint64_t seed) {
        if (blocks < 1)
            throw ConfigError("simple tabulation family: blocks must be >= 1");
        if (bucket_bits > 32)
            throw ConfigError("simple tabulation family: bucket_bits must be <= 32");
        SimpleTabulationFamily f;
        f.hashes_.reserve(blocks);
        f.signs_.reserve(blocks);
        for (std::uint32_t b = 0; b < blocks; ++b) {
            f.hashes_.push_back(SimpleTabulation::build(
                alphabet, bucket_bits, derive_seed(seed, 2 * b)));
            f.signs_.push_back(
                SignTable::build(alphabet, derive_seed(seed, 2 * b + 1)));
        }
        return f;
    }

    static SimpleTabulationFamily from_parts(std::vector<SimpleTabulation> hashes,
                                             std::vector<SignTable> signs) {
        if (hashes.empty() || hashes.size() != signs.size())
            throw ConfigError("simple tabulation family: need matching hash/sign pairs");
        if (hashes.front().out_bits() > 32)
            throw ConfigError("simple tabulation family: bucket_bits must be <= 32");
        SimpleTabulationFamily f;
        f.hashes_ = std::move(hashes);
        f.signs_ = std::move(signs);
        return f;
    }

    BucketSign eval(std::uint32_t i, std::uint64_t key) const {
        if (i >= blocks())
            throw DataError("simple tabulation family: block index out of range");
        return {static_cast<std::uint32_t>(hashes_[i](key)), signs_[i](key)};
    }

    void eval_blocks(std::uint64_t key, std::span<BucketSign> out) const {
        for (std::uint32_t i = 0; i < blocks(); ++i)
            out[i] = {static_cast<std::uint32_t>(hashes_[i](key)), signs_[i](key)};
    }

    std::uint32_t blocks() const { return static_cast<std::uint32_t>(hashes_.size()); }
    int bucket_bits() const { return hashes_.front().out_bits(); }
    std::uint64_t universe() const { return hashes_.front().universe(); }
    const SimpleTabulation& block_hash(std::uint32_t i) const { return hashes_[i]; }
    const SignTable& block_sign(std::uint32_t i) const { return signs_[i]; }

private:
    std::vector<SimpleTabulation> hashes_;
    std::vector<SignTable> signs_;
};

enum class FamilyKind : std::uint8_t { simple = 0, mixed = 1, poly = 2, oracle = 3 };

std::string family_kind_name(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& name);

struct FamilyConfig {
    FamilyKind kind = FamilyKind::mixed;
    Alphabet alphabet;          // defines u; derived_d used by mixed
    int bucket_bits = 6;        // r, so m/s = 2^r
    std::uint32_t blocks = 1;   // s
    std::uint32_t kwise = 2;    // polynomial independence degree q
    std::uint64_t seed = 0;
    std::uint64_t oracle_entry_cap = RandomOracleFamily::kDefaultEntryCap;

    FamilyConfig with_seed(std::uint64_t s) const {
        FamilyConfig c = *this;
        c.seed = s;
        return c;
    }
};

class HashFamily {
public:
    using Impl = std::variant<SimpleTabulationFamily, MixedTabulationFamily,
                              PolynomialFamily, RandomOracleFamily>;

    HashFamily() = default;
    explicit HashFamily(Impl impl) : impl_(std::move(impl)) {}

    FamilyKind kind() const {
        return static_cast<FamilyKind>(impl_.index());
    }

    std::uint32_t blocks() const {
        return std::visit([](const auto& f) { return f.blocks(); }, impl_);
    }
    int bucket_bits() const {
        return std::visit([](const auto& f) { return f.bucket_bits(); }, impl_);
    }
    std::uint64_t universe() const {
        return std::visit([](const auto& f) { return f.universe(); }, impl_);
    }

    BucketSign eval(std::uint32_t i, std::uint64_t key) const {
        return std::visit([&](const auto& f) { return f.eval(i, key); }, impl_);
    }
    void eval_blocks(std::uint64_t key, std::span<BucketSign> out) const {
        std::visit([&](const auto& f) { f.eval_blocks(key, out); }, impl_);
    }

    template <class Visitor>
    decltype(auto) visit(Visitor&& visitor) const {
        return std::visit(std::forward<Visitor>(visitor), impl_);
    }

    template <class Family>
    const Family& as() const {
        return std::get<Family>(impl_);
    }

private:
    Impl impl_;
};

// Builds any family from its config. Emits a warning on std::cerr when a
// mixed family is asked for more blocks than sqrt(|Sigma|), where the
// guarantees thin out; the construction itself allows up to |Sigma|.
HashFamily build_family(const FamilyConfig& config);

} // namespace sjlt
