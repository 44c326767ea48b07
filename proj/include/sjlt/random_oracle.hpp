#pragma once
// Fully random (bucket, sign) table over [s] x [u]. Ground-truth baseline
// for the experiments; only constructible while s*u stays under a cap.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sjlt/error.hpp"
#include "sjlt/mixed_tabulation.hpp" // BucketSign
#include "sjlt/rng.hpp"

namespace sjlt {

class RandomOracleFamily {
public:
    static constexpr std::uint64_t kDefaultEntryCap = std::uint64_t{1} << 26;

    RandomOracleFamily() = default;

    static RandomOracleFamily build(std::uint64_t universe, std::uint32_t blocks,
                                    int bucket_bits, std::uint64_t seed,
                                    std::uint64_t entry_cap = kDefaultEntryCap) {
        if (universe < 1 || blocks < 1)
            throw ConfigError("random oracle: universe and blocks must be >= 1");
        if (bucket_bits < 1 || bucket_bits > 32)
            throw ConfigError("random oracle: bucket_bits must be in [1, 32]");
        if (universe > entry_cap / blocks)
            throw ResourceError("random oracle: " + std::to_string(blocks) + " x " +
                                std::to_string(universe) + " entries exceed cap " +
                                std::to_string(entry_cap));
        const std::uint64_t entries = universe * blocks;
        RandomOracleFamily f;
        f.universe_ = universe;
        f.blocks_ = blocks;
        f.bucket_bits_ = bucket_bits;
        f.seed_ = seed;
        f.words_.resize(entries);
        SplitMix64 rng(derive_seed(seed, 0));
        for (auto& w : f.words_) w = rng.next();
        return f;
    }

    static RandomOracleFamily from_words(std::uint64_t universe, std::uint32_t blocks,
                                         int bucket_bits,
                                         std::vector<std::uint64_t> words,
                                         std::uint64_t seed = 0) {
        if (words.size() != universe * blocks)
            throw DataError("random oracle: word count does not match s*u");
        RandomOracleFamily f;
        f.universe_ = universe;
        f.blocks_ = blocks;
        f.bucket_bits_ = bucket_bits;
        f.seed_ = seed;
        f.words_ = std::move(words);
        return f;
    }

    BucketSign eval(std::uint32_t i, std::uint64_t key) const {
        if (i >= blocks_) throw DataError("random oracle: block index out of range");
        if (key >= universe_) throw DataError("random oracle: key out of range");
        return extract(words_[key * blocks_ + i]);
    }

    void eval_blocks(std::uint64_t key, std::span<BucketSign> out) const {
        if (key >= universe_) throw DataError("random oracle: key out of range");
        const std::uint64_t* row = words_.data() + key * blocks_;
        for (std::uint32_t i = 0; i < blocks_; ++i) out[i] = extract(row[i]);
    }

    std::uint32_t blocks() const { return blocks_; }
    int bucket_bits() const { return bucket_bits_; }
    std::uint64_t universe() const { return universe_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const RandomOracleFamily& other) const {
        return universe_ == other.universe_ && blocks_ == other.blocks_ &&
               bucket_bits_ == other.bucket_bits_ && words_ == other.words_;
    }

private:
    BucketSign extract(std::uint64_t word) const {
        const std::uint64_t mask = (std::uint64_t{1} << bucket_bits_) - 1;
        return {static_cast<std::uint32_t>(word & mask),
                ((word >> bucket_bits_) & 1) ? -1 : +1};
    }

    std::uint64_t universe_ = 0;
    std::uint32_t blocks_ = 0;
    int bucket_bits_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace sjlt
