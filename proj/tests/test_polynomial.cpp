#include <doctest.h>

#include <vector>

#include "sjlt/polynomial_hash.hpp"
#include "support.hpp"

using namespace sjlt;

TEST_SUITE("polynomial") {

TEST_CASE("degree zero is a constant") {
    const auto family = PolynomialFamily::from_polynomial(
        PolynomialHash::from_coefficients({5}), /*universe=*/1 << 10,
        /*blocks=*/1, /*bucket_bits=*/3);
    for (std::uint64_t key = 0; key < 100; ++key)
        CHECK(family.eval(0, key).bucket == 5);
}

TEST_CASE("small prime evaluates by hand") {
    // P=31, a0=2, a1=3: value at 4 is 14; with r=3, bucket = 14 mod 8 = 6.
    const auto poly = PolynomialHash::from_coefficients({2, 3}, 31);
    CHECK(poly(4) == 14);
    const auto family = PolynomialFamily::from_polynomial(poly, /*universe=*/5,
                                                          /*blocks=*/1, 3);
    CHECK(family.eval(0, 4).bucket == 6);
}

TEST_CASE("mersenne fast path agrees with generic modular arithmetic") {
    SplitMix64 rng(5);
    std::vector<std::uint64_t> coeffs(7);
    for (auto& a : coeffs) a = rng.next_below(kMersenne61);
    const auto fast = PolynomialHash::from_coefficients(coeffs, kMersenne61);
    // Same coefficients against a non-Mersenne-tagged prime path: use the
    // generic route by evaluating mod a prime that is numerically identical
    // but compared against a reference Horner loop here.
    using u128 = unsigned __int128;
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t x = rng.next_below(kMersenne61);
        std::uint64_t expected = coeffs.back();
        for (std::size_t j = coeffs.size() - 1; j-- > 0;)
            expected = static_cast<std::uint64_t>(
                (static_cast<u128>(expected) * x + coeffs[j]) % kMersenne61);
        CHECK(fast(x) == expected);
    }
}

TEST_CASE("input outside the field is rejected") {
    const auto poly = PolynomialHash::from_coefficients({2, 3}, 31);
    CHECK_THROWS_AS(poly(31), DataError);
    const auto family = PolynomialFamily::build(1 << 8, 4, 3, 2, 9);
    CHECK_THROWS_AS(family.eval(4, 0), DataError);
    CHECK_THROWS_AS(family.eval(0, 1 << 8), DataError);
}

TEST_CASE("encoding blocks*universe must fit the field") {
    CHECK_THROWS_AS(
        PolynomialFamily::from_polynomial(PolynomialHash::from_coefficients({1}, 31),
                                          /*universe=*/16, /*blocks=*/2, 3),
        ConfigError);
}

TEST_CASE("same seed reproduces coefficients") {
    const auto a = PolynomialHash::build(4, 77);
    const auto b = PolynomialHash::build(4, 77);
    CHECK(a == b);
}

TEST_CASE("4-wise independence smoke test via chi-square") {
    // Joint law of the low bucket bit on 4 distinct keys over fresh
    // coefficient draws; 16 cells, significance 0.001.
    constexpr int kDraws = 100000;
    const std::uint64_t keys[4] = {3, 19, 257, 65539};
    std::vector<std::int64_t> cells(16, 0);
    for (int draw = 0; draw < kDraws; ++draw) {
        const auto family = PolynomialFamily::from_polynomial(
            PolynomialHash::build(4, derive_seed(0xC0FFEE, static_cast<std::uint64_t>(draw))),
            /*universe=*/std::uint64_t{1} << 32, /*blocks=*/1, /*bucket_bits=*/1);
        int tuple = 0;
        for (int k = 0; k < 4; ++k)
            tuple |= static_cast<int>(family.eval(0, keys[k]).bucket) << k;
        ++cells[static_cast<std::size_t>(tuple)];
    }
    const double stat = testsupport::chi_square_uniform(cells, kDraws);
    CHECK(testsupport::chi_square_pvalue(stat, 15) > 0.001);
}

} // TEST_SUITE
