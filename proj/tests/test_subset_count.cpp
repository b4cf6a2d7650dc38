#include <doctest.h>

#include <cmath>
#include <vector>

#include "bfcert/errors.hpp"
#include "bfcert/rng.hpp"
#include "bfcert/subset_count.hpp"

using namespace bfcert;

namespace {

CompressedVector cv_of(std::vector<int64_t> a) { return compress(a); }

}

TEST_CASE("binomial basics") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(10, 11) == 0);
    CHECK(binomial(52, 26) == BigInt("495918532948104"));
    // big-row growth
    CHECK(log2_big(binomial(17558, 7)) > 0);
}

TEST_CASE("compress") {
    auto cv = cv_of({0, 0, 0});
    CHECK(cv.length == 3);
    REQUIRE(cv.levels.size() == 1);
    CHECK(cv.levels[0] == std::pair<int64_t, uint64_t>{0, 3});

    cv = cv_of({2, 0, 1, 1, 2});
    REQUIRE(cv.levels.size() == 3);
    CHECK(cv.levels[0] == std::pair<int64_t, uint64_t>{0, 1});
    CHECK(cv.levels[1] == std::pair<int64_t, uint64_t>{1, 2});
    CHECK(cv.levels[2] == std::pair<int64_t, uint64_t>{2, 2});

    std::vector<int64_t> bad{1, -1};
    CHECK_THROWS_AS(compress(bad), DomainError);
}

TEST_CASE("count_exceeding per-case") {
    // total sum is zero, nothing exceeds a nonnegative alpha
    CHECK(count_exceeding(cv_of({0, 0, 0, 0}), 2, 0) == 0);
    // the two {1,2} pairs
    CHECK(count_exceeding(cv_of({0, 0, 1, 1, 2}), 2, 2) == 2);
    // m = 0: empty sum never exceeds alpha >= 0
    CHECK(count_exceeding(cv_of({5, 5}), 0, 0) == 0);
    // negative alpha: every subset exceeds
    CHECK(count_exceeding(cv_of({0, 1, 2}), 2, -1) == 3);
    CHECK_THROWS_AS(count_exceeding(cv_of({1, 2}), 3, 0), DomainError);
}

TEST_CASE("count_exceeding_bruteforce per-case") {
    std::vector<int64_t> ones{1, 1, 1};
    CHECK(count_exceeding_bruteforce(ones, 2, 1) == 3);
    CHECK(count_exceeding_bruteforce(ones, 2, 2) == 0);
    std::vector<int64_t> spike{3, 0, 0, 0};
    CHECK(count_exceeding_bruteforce(spike, 1, 2) == 1);
    std::vector<int64_t> big(26, 1);
    CHECK_THROWS_AS(count_exceeding_bruteforce(big, 2, 0), GuardError);
}

TEST_CASE("count_exceeding equals brute force on random instances") {
    SplitMix64 rng(0xc0de5eedull);
    for (int round = 0; round < 250; ++round) {
        uint32_t l = 1 + (uint32_t)rng.below(18);
        std::vector<int64_t> a(l);
        for (auto& x : a) x = (int64_t)rng.below(7);
        uint64_t m = rng.below(l + 1);
        int64_t alpha = (int64_t)rng.below(15);
        auto fast = count_exceeding(compress(a), m, alpha);
        auto slow = count_exceeding_bruteforce(a, m, alpha);
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(alpha);
        CHECK(fast == slow);
    }
}

TEST_CASE("count_exceeding properties") {
    SplitMix64 rng(0x5eedf00dull);
    for (int round = 0; round < 60; ++round) {
        uint32_t l = 2 + (uint32_t)rng.below(14);
        std::vector<int64_t> a(l);
        for (auto& x : a) x = (int64_t)rng.below(5);
        auto cv = compress(a);
        uint64_t m = rng.below(l + 1);

        // complement identity and monotonicity in alpha
        BigInt prev = -1;
        for (int64_t alpha = 0; alpha <= 10; ++alpha) {
            BigInt ex = count_exceeding(cv, m, alpha);
            if (prev >= 0) CHECK(ex <= prev);
            prev = ex;
        }
    }
}

TEST_CASE("count_exceeding work counter stays within the coarse effort bound") {
    SplitMix64 rng(0xabcdefull);
    for (int round = 0; round < 40; ++round) {
        uint32_t l = 4 + (uint32_t)rng.below(14);
        std::vector<int64_t> a(l);
        for (auto& x : a) x = (int64_t)rng.below(6);
        auto cv = compress(a);
        uint64_t m = 1 + rng.below(l);
        CountStats stats;
        count_exceeding(cv, m, (int64_t)rng.below(12), &stats);
        double omega = (double)cv.distinct_values();
        double cap = omega * std::pow((double)m, omega - 1.0) * std::exp(omega);
        CHECK((double)stats.configurations <= cap);
    }
}

TEST_CASE("theta closed form") {
    CHECK(theta(10, 3, 4, 1) == 40);
    // degenerate branches
    CHECK(theta(10, 3, 2, 2) == 0);  // alpha >= m
    CHECK(theta(10, 2, 5, 2) == 0);  // x <= alpha
    CHECK_THROWS_AS(theta(5, 3, 6, 1), DomainError);
    CHECK_THROWS_AS(theta(5, 6, 3, 1), DomainError);
}

TEST_CASE("theta equals subset enumeration on binary vectors") {
    for (uint32_t l = 1; l <= 12; ++l)
        for (uint32_t m = 0; m <= l; ++m) {
            std::vector<int64_t> a(l, 0);
            for (uint32_t i = 0; i < m; ++i) a[i] = 1;
            auto cv = compress(a);
            for (uint32_t x = 0; x <= l; ++x)
                for (int64_t alpha = 0; alpha <= (int64_t)l; ++alpha) {
                    CAPTURE(l);
                    CAPTURE(m);
                    CAPTURE(x);
                    CAPTURE(alpha);
                    CHECK(theta(l, x, m, alpha) == count_exceeding(cv, x, alpha));
                }
        }
}

TEST_CASE("binary specialization of the general counter") {
    SplitMix64 rng(0x9999ull);
    for (int round = 0; round < 50; ++round) {
        uint32_t l = 1 + (uint32_t)rng.below(18);
        uint32_t mw = (uint32_t)rng.below(l + 1); // vector weight
        std::vector<int64_t> a(l, 0);
        for (uint32_t i = 0; i < mw; ++i) a[i] = 1;
        auto cv = compress(a);
        uint64_t m = rng.below(l + 1); // subset size
        int64_t alpha = (int64_t)rng.below(l + 1);
        CHECK(count_exceeding(cv, m, alpha) == theta(l, m, mw, alpha));
    }
}
