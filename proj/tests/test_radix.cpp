#include <catch_amalgamated.hpp>

#include "lodisq/radix.hpp"

using namespace lodisq;

TEST_CASE("expand produces little-endian digits in base b^d") {
    auto e = expand(37, 2, 2);
    CHECK(e.digits == std::vector<std::uint64_t>{1, 1, 2});  // 37 = 1 + 1*4 + 2*16
    CHECK(e.top_index() == 2);

    CHECK(expand(0, 3, 1).digits.empty());
    CHECK(expand(5, 2, 1).digits == std::vector<std::uint64_t>{1, 0, 1});
}

TEST_CASE("expand rejects invalid parameters") {
    CHECK_THROWS_AS(expand(1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand(1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(radix_of(2, 70), std::overflow_error);
}

TEST_CASE("digit_sum") {
    CHECK(digit_sum(expand(5, 2, 1)) == 2);
    CHECK(digit_sum(expand(37, 2, 2)) == 4);
    CHECK(digit_sum(expand(0, 2, 1)) == 0);
}

TEST_CASE("m_b evaluates the min of the digit sum and its dual") {
    CHECK(m_b_of(5, 2) == 2);  // digits (1,0,1): min(2, 6-2+1-2) = 2
    CHECK(m_b_of(7, 2) == 2);  // digits (1,1,1): min(3, 6-2+1-3) = 2
    CHECK(m_b_of(1, 2) == 1);  // digits (1): min(1, 2-0+1-1) = 1

    CHECK_THROWS_AS(m_b(expand(5, 2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(m_b(expand(0, 2, 1)), std::invalid_argument);
}

TEST_CASE("complement satisfies N + N' = (b^d)^(n+1)") {
    CHECK(complement(expand(5, 2, 1)) == 3);
    CHECK(complement(expand(7, 2, 1)) == 1);
    CHECK(complement(expand(37, 2, 2)) == 27);
    CHECK_THROWS_AS(complement(expand(0, 2, 1)), std::invalid_argument);
}

TEST_CASE("round trip and complement identity over a sweep") {
    for (int b : {2, 3, 5}) {
        for (int d : {1, 2}) {
            const std::uint64_t radix = radix_of(b, d);
            // sparse sweep of the full range plus a dense low segment
            for (std::uint64_t n = 1; n < 1000000; n = n < 4096 ? n + 1 : n * 7 / 4) {
                auto e = expand(n, b, d);
                std::uint64_t back = 0, power = 1;
                for (std::uint64_t dig : e.digits) {
                    REQUIRE(dig < radix);
                    back += dig * power;
                    power *= radix;
                }
                REQUIRE(back == n);
                REQUIRE(!e.digits.empty());
                REQUIRE(e.digits.back() > 0);
                const std::uint64_t comp = complement(e);
                REQUIRE(n + comp == pow_u64(radix, static_cast<unsigned>(e.digits.size())));
            }
        }
    }
}

// The eq-2 style dual term b(n+1)-n+1-sum dominates the carried digit sum of
// the complement by at least one: carrying only shrinks digit sums.
TEST_CASE("complement digit sum sits under the dual term") {
    for (int b : {2, 3}) {
        for (std::uint64_t n = 1; n < (1u << 12); ++n) {
            auto e = expand(n, b, 1);
            const std::uint64_t nn = static_cast<std::uint64_t>(e.top_index());
            const std::uint64_t alt = static_cast<std::uint64_t>(b) * (nn + 1) - nn + 1 - digit_sum(e);
            const std::uint64_t comp_sum = digit_sum(expand(complement(e), b, 1));
            REQUIRE(comp_sum + 1 <= alt);
            REQUIRE(m_b(e) == std::min(digit_sum(e), alt));
        }
    }
}
