// Copyright 2026 The sqg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/gap_stats.hpp"
#include "sqg/huxley_counts.hpp"
#include "sqg/sieve.hpp"

using namespace sqg;

TEST_CASE("prime_square_values") {
    const auto v = prime_square_values(40, 100, 5, 10);
    // 50 = 25*2, 75 = 25*3, 98 = 49*2, 100 = 25*4, 49 = 49*1
    std::vector<uint64_t> values;
    for (const auto& e : v) values.push_back(e.value);
    CHECK(values == std::vector<uint64_t>{49, 50, 75, 98, 100});
    for (const auto& e : v) CHECK(uint64_t{e.p} * e.p * e.q == e.value);
}

TEST_CASE("count_F examples") {
    CHECK(count_F(48, 2, 5) == 2);
    CHECK(count_F(1, 2, 2) == 0);
    CHECK(count_F_dyadic(48, 2, 5) == 2);
    CHECK(count_F_dyadic(10, 5, 8) == 0);
}

TEST_CASE("count_F against per-integer factorization") {
    std::mt19937_64 gen(21);
    for (int i = 0; i < 100; ++i) {
        const uint64_t n = 1 + gen() % 100'000;
        const uint64_t H = 1 + gen() % 200;
        const uint64_t p_min = 2 + gen() % 30;
        CHECK(count_F(n, H, static_cast<double>(p_min)) == oracle::F(n, H, p_min));
        CHECK(count_F_dyadic(n, H, p_min) == oracle::F(n, H, p_min, 2 * p_min));
    }
}

TEST_CASE("dyadic blocks partition count_F") {
    std::mt19937_64 gen(22);
    for (int i = 0; i < 100; ++i) {
        const uint64_t n = 1 + gen() % 10'000'000;
        const uint64_t H = 1 + gen() % 500;
        const uint64_t P = 2 + gen() % 20;
        uint64_t sum = 0;
        for (uint64_t b = P; b * b <= n + H; b *= 2) sum += count_F_dyadic(n, H, b);
        CHECK(sum == count_F(n, H, static_cast<double>(P)));
    }
}

TEST_CASE("count_F and compute_T are monotone in H") {
    std::mt19937_64 gen(23);
    for (int i = 0; i < 30; ++i) {
        const uint64_t n = 1 + gen() % 1'000'000;
        const uint64_t x = 4000 + gen() % 50'000;
        const uint64_t P = 2 + gen() % 12;
        for (uint64_t H = 1; H < 40; ++H) {
            CHECK(count_F(n, H, 2) <= count_F(n, H + 1, 2));
            CHECK(compute_T(x, H, P).exact <= compute_T(x, H + 1, P).exact);
        }
    }
}

TEST_CASE("compute_T edge cases") {
    CHECK(compute_T(1000, 10, 40).exact == 0);  // P^2 > x
    CHECK_THROWS_AS(compute_T(100, 30, 2), std::domain_error);
    CHECK_THROWS_AS(compute_T(1000, 10, 1), std::domain_error);
    for (uint64_t x : {1000, 5000, 77'777})
        for (uint64_t P : {2, 5, 16, 100}) {
            bool any = false;
            for (uint64_t v = (x + 1) / 2 + 1; v <= x; ++v)
                for (uint64_t p = P; p < 2 * P; ++p)
                    if (oracle::is_prime(p) && v % (p * p) == 0) any = true;
            CHECK(compute_T(x, 1, P).exact == (any ? 1u : 0u));
        }
}

TEST_CASE("compute_T against the naive scan") {
    std::mt19937_64 gen(24);
    for (int i = 0; i < 40; ++i) {
        const uint64_t x = 100 + gen() % 20'000;
        const uint64_t H = 1 + gen() % std::min<uint64_t>(x / 4, 80);
        const uint64_t P = 2 + gen() % 30;
        CHECK(compute_T(x, H, P).exact == oracle::T(x, H, P));
    }
}

TEST_CASE("compute_T bound value") {
    const auto r = compute_T(1'000'000, 64, 64);
    const double b = std::pow(1e6, 1.0 / 15) * std::pow(64.0, 8.0 / 15) + std::pow(64.0, 1.0 / 6) * std::pow(64.0, 2.0 / 3) +
                     std::pow(64.0, 0.25) * 64 / std::pow(1e6, 0.25);
    CHECK(r.bound_value == doctest::Approx(b));
    CHECK(r.fitted_constant == doctest::Approx(r.exact / b));
}

TEST_CASE("window safety across blocks") {
    // T summed over the dyadic blocks bounds F for every n in range.
    const uint64_t x = 200'000, H = 16;
    const uint64_t P0 = 4;
    uint64_t bound = 0;
    for (uint64_t P = P0; P * P <= x; P *= 2) bound += compute_T(x, H, P).exact;
    std::mt19937_64 gen(25);
    for (int i = 0; i < 200; ++i) {
        const uint64_t n = (x + 1) / 2 + gen() % (x / 2 - H);
        CHECK(count_F(n, H, static_cast<double>(P0)) <= bound);
    }
}

TEST_CASE("count_S edge cases") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(count_S({100'000, 1, 8, 10, 10}, 3.0).report.exact == 0);
    CHECK_THROWS_AS(count_S({100'000, 8, 1, 10, 10}, 3.0), std::domain_error);
    CHECK_THROWS_AS(count_S({100'000, 8, 8, 0, 10}, 3.0), std::domain_error);

    // Caps above x are inactive.
    const auto capped = count_S({20'000, 24, 4, 1e12, 1e12}, 3.0);
    const auto uncapped = oracle::S(20'000, 24, 4, inf, inf);
    CHECK(capped.report.exact == uncapped.all);
    CHECK(capped.distinct_primes == uncapped.distinct_primes);
}

TEST_CASE("count_S with derived caps") {
    const auto p = derive_params(100'000, 3.0, 1.0, 32);
    const auto got = count_S({100'000, 32, 8, p.D, p.Dprime}, 3.0);
    const auto want = oracle::S(100'000, 32, 8, p.D, p.Dprime);
    CHECK(got.report.exact == want.all);
    CHECK(got.distinct_primes == want.distinct_primes);
    const double lh = std::log(32.0);
    CHECK(got.report.bound_value == doctest::Approx(1e5 / (std::pow(32.0, 0.0) * std::pow(lh, 6))));
}

TEST_CASE("count_S with tight caps against brute force") {
    std::mt19937_64 gen(26);
    for (int i = 0; i < 25; ++i) {
        const uint64_t x = 1000 + gen() % 20'000;
        const uint64_t H = 1 + gen() % 64;
        const uint64_t P = 2 + gen() % 10;
        const double D = 1 + static_cast<double>(gen() % 4);
        const double Dp = D + static_cast<double>(gen() % 6);
        const auto got = count_S({x, H, P, D, Dp}, 3.5);
        const auto want = oracle::S(x, H, P, D, Dp);
        CHECK(got.report.exact == want.all);
        CHECK(got.distinct_primes == want.distinct_primes);
    }
}

TEST_CASE("case1a_range") {
    CHECK(case1a_range(100, 1, 1, 2) == oracle::range(100, 1, 1, 2, 1));
    CHECK(case1a_range(1000, 2, 1, 3) == oracle::range(1000, 2, 1, 3, 1));
    CHECK(case1a_range(10, 1, 1, 4) == 0);
    for (uint64_t x = 1; x < 3000; x += 7) CHECK(case1a_range(x, 1, 1, 2, 3) == oracle::range(x, 1, 1, 2, 3));
}

TEST_CASE("count_case1a examples") {
    CHECK(count_case1a(1, 2, 1, 2, 1000).exact == 0);  // H/(KL) < 1
    CHECK(count_case1a(5, 1, 1, 2, 200).exact == oracle::case1a(5, 1, 1, 2, 200));
    // A single prime: pairs t != u with p^2 |t - u| <= H/(KL).
    const uint64_t x = 600, P = 4;  // only p = 5 and p = 7 lie in [4, 8)
    const uint64_t R = case1a_range(x, 1, 1, P);
    uint64_t same_prime = 0;
    for (uint64_t p : {5, 7})
        for (uint64_t t = 1; t <= R; ++t)
            for (uint64_t u = 1; u <= R; ++u)
                if (t != u && p * p * (t > u ? t - u : u - t) <= 30) ++same_prime;
    uint64_t cross = 0;
    for (uint64_t t = 1; t <= R; ++t)
        for (uint64_t u = 1; u <= R; ++u) {
            const int64_t d = int64_t(25 * t) - int64_t(49 * u);
            if (d != 0 && std::abs(d) <= 30) cross += 2;
        }
    CHECK(count_case1a(30, 1, 1, P, x).exact == same_prime + cross);
}

TEST_CASE("count_case1a against four nested loops") {
    std::mt19937_64 gen(27);
    for (int i = 0; i < 40; ++i) {
        const uint64_t x = 50 + gen() % 5000;
        const uint64_t P = 2 + gen() % 14;
        const uint64_t K = uint64_t{1} << (gen() % 3), L = uint64_t{1} << (gen() % 3);
        const uint64_t H = 1 + gen() % 100;
        CHECK(count_case1a(H, K, L, P, x).exact == oracle::case1a(H, K, L, P, x));
        const uint64_t v = 1 + gen() % 3;
        CHECK(count_case1a_ordered_gcd(H, K, L, P, x, v) == oracle::case1a(H, K, L, P, x, true, v));
    }
}

TEST_CASE("count_2dim") {
    CHECK(count_2dim(8, 1, 1, 16, 100, 1) == 0);  // range < 1
    CHECK_THROWS_AS(count_2dim(8, 1, 1, 16, 100, 0), std::domain_error);
    std::mt19937_64 gen(28);
    for (int i = 0; i < 40; ++i) {
        const uint64_t x = 50 + gen() % 4000;
        const uint64_t P = 2 + gen() % 14;
        const uint64_t K = uint64_t{1} << (gen() % 2), L = uint64_t{1} << (gen() % 2);
        const uint64_t H = 1 + gen() % 200;
        const uint64_t v = 1 + gen() % 3;
        CHECK(count_2dim(H, K, L, P, x, v) == oracle::two_dim(H, K, L, P, x, v));
    }
}

TEST_CASE("two_dim_holds boundary is exact") {
    // p1 = 3, p2 = 2, t = 1, u = 4: |2 - 3/2| = 1/2 and the right side is H / (K L P^2 2 v).
    // With P = 2, K = L = v = 1 the right side is H/8, so H = 4 sits on the boundary.
    CHECK(two_dim_holds(3, 2, 1, 4, 4, 1, 1, 2, 1));
    CHECK_FALSE(two_dim_holds(3, 2, 1, 4, 3, 1, 1, 2, 1));
    CHECK_FALSE(two_dim_holds(3, 2, 4, 9, 100, 1, 1, 2, 1));  // exact equality excluded
}

TEST_CASE("inclusion of ordered quadruples in the two-dimensional count") {
    // Holds while H/(KL) stays below the smallest p1^2 - p2^2 in the block.
    struct Case {
        uint64_t H, K, L, P, x;
    };
    for (const Case& c : {Case{4, 1, 1, 8, 20'000}, Case{8, 1, 1, 16, 50'000}, Case{16, 1, 1, 32, 200'000},
                          Case{32, 2, 1, 16, 30'000}, Case{40, 1, 1, 32, 100'000}}) {
        const auto primes = primes_in(c.P, 2 * c.P);
        uint64_t min_gap = UINT64_MAX;
        for (size_t i = 1; i < primes.size(); ++i)
            min_gap = std::min<uint64_t>(min_gap, uint64_t{primes[i]} * primes[i] - uint64_t{primes[i - 1]} * primes[i - 1]);
        REQUIRE(c.H / (c.K * c.L) < min_gap);
        const uint64_t R = case1a_range(c.x, c.K, c.L, c.P);
        uint64_t sum_two_dim = 0, ordered = 0;
        for (uint64_t v = 1; v <= R; ++v) {
            const uint64_t q = count_case1a_ordered_gcd(c.H, c.K, c.L, c.P, c.x, v);
            const uint64_t w = count_2dim(c.H, c.K, c.L, c.P, c.x, v);
            CHECK(q <= w);
            ordered += q;
            sum_two_dim += w;
        }
        CHECK(ordered <= sum_two_dim);
    }
}
