#include <doctest.h>

#include <vector>

#include "sjlt/random_oracle.hpp"
#include "support.hpp"

using namespace sjlt;

TEST_SUITE("random_oracle") {

TEST_CASE("shape: s*u entries, buckets below 2^r") {
    const auto oracle = RandomOracleFamily::build(16, 2, 3, 7);
    CHECK(oracle.words().size() == 32);
    for (std::uint64_t x = 0; x < 16; ++x)
        for (std::uint32_t i = 0; i < 2; ++i) {
            const auto [bucket, sign] = oracle.eval(i, x);
            CHECK(bucket < 8);
            CHECK((sign == 1 || sign == -1));
        }
}

TEST_CASE("same seed reproduces the table") {
    const auto a = RandomOracleFamily::build(64, 4, 4, 9);
    const auto b = RandomOracleFamily::build(64, 4, 4, 9);
    CHECK(a == b);
}

TEST_CASE("entry cap is enforced") {
    CHECK_THROWS_AS(RandomOracleFamily::build(std::uint64_t{1} << 24, 8, 4, 1),
                    ResourceError);
    CHECK_THROWS_AS(RandomOracleFamily::build(1 << 10, 2, 4, 1, /*cap=*/1024),
                    ResourceError);
    CHECK_NOTHROW(RandomOracleFamily::build(1 << 9, 2, 4, 1, /*cap=*/1024));
}

TEST_CASE("bucket uniformity chi-square at significance 0.001") {
    // u=2^16, s=4, r=6: 2^18 samples over 64 cells.
    const auto oracle =
        RandomOracleFamily::build(std::uint64_t{1} << 16, 4, 6, 0xFEED);
    std::vector<std::int64_t> cells(64, 0);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << 16); ++x)
        for (std::uint32_t i = 0; i < 4; ++i)
            ++cells[oracle.eval(i, x).bucket];
    const double stat =
        testsupport::chi_square_uniform(cells, std::int64_t{4} << 16);
    CHECK(testsupport::chi_square_pvalue(stat, 63) > 0.001);
}

TEST_CASE("out of range block or key is rejected") {
    const auto oracle = RandomOracleFamily::build(16, 2, 3, 7);
    CHECK_THROWS_AS(oracle.eval(2, 0), DataError);
    CHECK_THROWS_AS(oracle.eval(0, 16), DataError);
}

} // TEST_SUITE
