#include <doctest.h>

#include <set>
#include <vector>

#include "sjlt/mixed_tabulation.hpp"
#include "sjlt/rng.hpp"

using namespace sjlt;

namespace {

// Scalar recomputation of a simple tabulation hash straight from the dumped
// tables, independent of the library's evaluation loop.
std::uint64_t recompute(const SimpleTabulation& h, std::uint64_t key) {
    std::uint64_t out = 0;
    for (int j = 0; j < h.alphabet().c; ++j)
        out ^= h.table_entry(j, h.alphabet().extract_char(key, j));
    return out;
}

} // namespace

TEST_SUITE("mixed_tabulation") {

TEST_CASE("zero h3 tables collapse to h1") {
    const Alphabet a{4, 2, 1};
    auto mixed = MixedTabulation::build(a, 8, 5);
    const Alphabet derived{4, 1, 0};
    auto zero_h3 = SimpleTabulation::from_tables(
        derived, 8, std::vector<std::uint64_t>(16, 0));
    auto patched = MixedTabulation::from_components(
        mixed.h1(), mixed.h2(), zero_h3, mixed.sigma1(), mixed.sigma3());
    for (std::uint64_t x = 0; x < a.universe(); ++x)
        CHECK(patched(x) == mixed.h1()(x));
}

TEST_CASE("zero h1 tables collapse to h3 of h2") {
    const Alphabet a{4, 2, 1};
    auto mixed = MixedTabulation::build(a, 8, 5);
    auto zero_h1 = SimpleTabulation::from_tables(
        Alphabet{4, 2, 0}, 8, std::vector<std::uint64_t>(32, 0));
    auto patched = MixedTabulation::from_components(
        zero_h1, mixed.h2(), mixed.h3(), mixed.sigma1(), mixed.sigma3());
    for (std::uint64_t x = 0; x < a.universe(); ++x)
        CHECK(patched(x) == mixed.h3()(mixed.h2()(x)));
}

TEST_CASE("small instance matches scalar recomputation from dumped tables") {
    const Alphabet a{2, 2, 1};
    const auto mixed = MixedTabulation::build(a, 4, 20240417);
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        const std::uint64_t expected =
            recompute(mixed.h1(), x) ^ recompute(mixed.h3(), recompute(mixed.h2(), x));
        CHECK(mixed(x) == expected);
    }
}

TEST_CASE("components use independent streams") {
    const Alphabet a{8, 2, 2};
    const auto mixed = MixedTabulation::build(a, 10, 7);
    CHECK(mixed.h1().table_words()[0] != mixed.h2().table_words()[0]);
    CHECK(mixed.h1().table_words()[0] != mixed.h3().table_words()[0]);
}

TEST_CASE("key out of range is rejected") {
    const Alphabet a{2, 2, 1};
    const auto mixed = MixedTabulation::build(a, 4, 1);
    CHECK_THROWS_AS(mixed(16), DataError);
}

TEST_CASE("block 0 equals the plain mixed hash") {
    const Alphabet a{8, 2, 2};
    const auto family = MixedTabulationFamily::build(a, 6, 8, 99);
    SplitMix64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t x = rng.next_bits(16);
        CHECK(family.eval(0, x).bucket == family.base()(x));
    }
}

TEST_CASE("signs are exactly +1/-1 over random block-key pairs") {
    const Alphabet a{8, 2, 2};
    const auto family = MixedTabulationFamily::build(a, 6, 16, 3);
    SplitMix64 rng(8);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto i = static_cast<std::uint32_t>(rng.next_below(16));
        const auto [bucket, sign] = family.eval(i, rng.next_bits(16));
        CHECK((sign == 1 || sign == -1));
        CHECK(bucket < 64);
    }
}

TEST_CASE("d=1 block fold matches recomputation from dumped tables") {
    // bucket(5, x) = h1(x) ^ h3(h2(x) ^ 0x05)
    const Alphabet a{8, 2, 1};
    const auto family = MixedTabulationFamily::build(a, 8, 6, 31);
    const auto& base = family.base();
    SplitMix64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t x = rng.next_bits(16);
        const std::uint64_t expected =
            recompute(base.h1(), x) ^
            recompute(base.h3(), recompute(base.h2(), x) ^ 0x05);
        CHECK(family.eval(5, x).bucket == expected);
    }
}

TEST_CASE("sign composes sigma1 times sigma3 of the folded derived key") {
    const Alphabet a{4, 2, 2};
    const auto family = MixedTabulationFamily::build(a, 5, 9, 12);
    const auto& base = family.base();
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        for (std::uint32_t i = 0; i < 9; ++i) {
            const std::uint64_t folded =
                base.h2()(x) ^ family.spread_block(i);
            CHECK(family.eval(i, x).sign ==
                  base.sigma1()(x) * base.sigma3()(folded));
        }
    }
}

TEST_CASE("block fold is injective per key") {
    const Alphabet a{8, 2, 2};
    const auto family = MixedTabulationFamily::build(a, 6, 200, 4);
    SplitMix64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t x = rng.next_bits(16);
        const std::uint64_t h2x = family.base().h2()(x);
        std::set<std::uint64_t> folded;
        for (std::uint32_t i = 0; i < 200; ++i)
            folded.insert(h2x ^ family.spread_block(i));
        CHECK(folded.size() == 200);
    }
}

TEST_CASE("batch evaluation agrees with per-block evaluation") {
    const Alphabet a{8, 2, 2};
    const auto family = MixedTabulationFamily::build(a, 6, 16, 77);
    std::vector<BucketSign> slots(16);
    SplitMix64 rng(6);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t x = rng.next_bits(16);
        family.eval_blocks(x, slots);
        for (std::uint32_t i = 0; i < 16; ++i) {
            const auto single = family.eval(i, x);
            CHECK(slots[i].bucket == single.bucket);
            CHECK(slots[i].sign == single.sign);
        }
    }
}

TEST_CASE("block count beyond the alphabet is rejected") {
    const Alphabet a{2, 2, 1}; // |Sigma| = 4
    CHECK_THROWS_AS(MixedTabulationFamily::build(a, 4, 5, 1), ConfigError);
    CHECK_NOTHROW(MixedTabulationFamily::build(a, 4, 4, 1));
}

TEST_CASE("mixed tabulation requires a derived character") {
    CHECK_THROWS_AS(MixedTabulation::build(Alphabet{8, 2, 0}, 8, 1), ConfigError);
}

} // TEST_SUITE
