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

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/sieve.hpp"

using namespace sqg;

TEST_CASE("trial division oracle") {
    CHECK(is_squarefree_oracle(6));
    CHECK_FALSE(is_squarefree_oracle(12));
    CHECK(is_squarefree_oracle(1));
    CHECK_THROWS_AS(is_squarefree_oracle(0), std::domain_error);
    for (uint64_t n = 1; n < 5000; ++n) CHECK(is_squarefree_oracle(n) == oracle::squarefree(n));
}

TEST_CASE("sieve_segment small blocks") {
    const auto bits = sieve_segment(1, 10);
    for (uint64_t n : {1, 2, 3, 5, 6, 7, 10}) CHECK(bits.is_squarefree(n));
    for (uint64_t n : {4, 8, 9}) CHECK_FALSE(bits.is_squarefree(n));
    CHECK(bits.count() == 7);

    const auto four = sieve_segment(4, 1);
    CHECK(four.length() == 1);
    CHECK_FALSE(four.test(0));
    CHECK(four.count() == 0);

    CHECK_THROWS_AS(sieve_segment(1, 0), std::domain_error);
    CHECK_THROWS_AS(sieve_segment(0, 5), std::domain_error);
    CHECK_THROWS_AS(sieve_segment(1000, 100, PrimeTable(10)), std::invalid_argument);
}

TEST_CASE("sieve_segment matches trial division above one million") {
    const auto bits = sieve_segment(1'000'001, 100'000);
    uint64_t mismatches = 0;
    for (uint64_t n = bits.base(); n <= bits.last(); ++n) mismatches += bits.is_squarefree(n) != oracle::squarefree(n);
    CHECK(mismatches == 0);
}

TEST_CASE("sieve_segment padding bits stay clear") {
    for (uint32_t len : {1u, 63u, 64u, 65u, 130u}) {
        const auto bits = sieve_segment(1, len);
        const auto words = bits.words();
        REQUIRE(words.size() == (len + 63) / 64);
        if (len % 64) CHECK((words.back() >> (len % 64)) == 0);
        CHECK(bits.count() == oracle::squarefree_list(len).size());
    }
}

TEST_CASE("count_through") {
    const auto bits = sieve_segment(1, 100);
    CHECK(bits.count_through(10) == 7);
    CHECK(bits.count_through(100) == bits.count());
    CHECK(bits.count_through(64) == oracle::squarefree_list(64).size());
}

TEST_CASE("binary dump round trip") {
    const auto bits = sieve_segment(123'456'789, 1000);
    std::stringstream ss;
    bits.write(ss);
    const std::string raw = ss.str();
    REQUIRE(raw.size() == 12 + 8 * ((1000 + 63) / 64));
    // little-endian base then length
    uint64_t base = 0;
    for (int i = 7; i >= 0; --i) base = (base << 8) | static_cast<unsigned char>(raw[i]);
    CHECK(base == 123'456'789);
    CHECK((static_cast<unsigned char>(raw[8]) | static_cast<unsigned char>(raw[9]) << 8) == 1000);
    const auto back = SegmentBitmap::read(ss);
    CHECK(back == bits);

    std::stringstream truncated(raw.substr(0, raw.size() - 3));
    CHECK_THROWS(SegmentBitmap::read(truncated));
}

TEST_CASE("largest_squarefree_at_most") {
    const PrimeTable table(1000);
    CHECK(largest_squarefree_at_most(1, table) == 1);
    CHECK(largest_squarefree_at_most(9, table) == 7);
    CHECK(largest_squarefree_at_most(10, table) == 10);
    CHECK(largest_squarefree_at_most(1000, table) == 998);
    CHECK(largest_squarefree_at_most(1001, table) == 1001);
    std::mt19937_64 gen(7);
    for (int i = 0; i < 50; ++i) {
        const uint64_t n = 1 + gen() % 900'000;
        uint64_t expect = n;
        while (!oracle::squarefree(expect)) --expect;
        CHECK(largest_squarefree_at_most(n, table) == expect);
    }
}

TEST_CASE("gap_stream examples") {
    const std::vector<GapRecord> first{{1, 2, 1}, {2, 3, 1}, {3, 5, 2}, {5, 6, 1}, {6, 7, 1}, {7, 10, 3}};
    CHECK(gap_stream(1, 10, 1024) == first);
    CHECK(gap_stream(5, 7, 1024) == std::vector<GapRecord>{{5, 6, 1}, {6, 7, 1}});
    CHECK_THROWS_AS(gap_stream(5, 5, 1024), std::domain_error);
    CHECK_THROWS_AS(gap_stream(1, 10, 32), std::domain_error);
}

TEST_CASE("gap_stream is independent of segmentation and threads") {
    const auto a = gap_stream(1'000'000, 2'000'000, 1u << 16);
    const auto b = gap_stream(1'000'000, 2'000'000, 1u << 12);
    const auto c = gap_stream(1'000'000, 2'000'000, SieveOptions{1u << 10, 3});
    CHECK(a == b);
    CHECK(a == c);
    // Records start at the last squarefree <= x_lo.
    CHECK(a.front().prev <= 1'000'000);
    CHECK(a.front().next > 1'000'000);
    CHECK(a.back().next <= 2'000'000);
}

TEST_CASE("gap_stream against brute force on random ranges") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 20; ++i) {
        const uint64_t lo = 1 + gen() % 20'000;
        const uint64_t hi = lo + 1 + gen() % 3000;
        const auto s = oracle::squarefree_list(hi);
        std::vector<GapRecord> expect;
        for (size_t k = 1; k < s.size(); ++k)
            if (s[k] > lo) expect.push_back({s[k - 1], s[k], s[k] - s[k - 1]});
        CHECK(gap_stream(lo, hi, 64) == expect);
    }
}

TEST_CASE("gap_stream crosses a long non-squarefree run") {
    // 242, 243, 244 and 245 all have a square factor.
    const auto g = gap_stream(240, 250, 64);
    for (const auto& r : g) CHECK(r.gap == r.next - r.prev);
    CHECK(std::find(g.begin(), g.end(), GapRecord{241, 246, 5}) != g.end());
    const auto s = oracle::squarefree_list(250);
    CHECK(g.back().next == s.back());
}
