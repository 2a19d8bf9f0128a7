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
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/gap_stats.hpp"

using namespace sqg;

namespace {

std::vector<GapRecord> brute_gaps(uint64_t x) {
    const auto s = oracle::squarefree_list(x);
    std::vector<GapRecord> out;
    for (size_t k = 1; k < s.size(); ++k) out.push_back({s[k - 1], s[k], s[k] - s[k - 1]});
    return out;
}

}  // namespace

TEST_CASE("histogram") {
    const auto g10 = brute_gaps(10);
    const auto h = histogram(g10, 10);
    CHECK(h.counts == std::map<uint64_t, uint64_t>{{1, 4}, {2, 1}, {3, 1}});
    CHECK(histogram({}, 10).counts.empty());

    // 608 squarefree integers up to 1000.
    REQUIRE(oracle::squarefree_list(1000).size() == 608);
    CHECK(histogram(gap_stream(1, 1000, 64), 1000).total() == 607);
}

TEST_CASE("moment_sum small x") {
    const auto g = gap_stream(1, 10, 64);
    CHECK(moment_sum(g, 1) == 9);
    CHECK(moment_sum(g, 2) == 17);
    CHECK(moment_sum(g, 0) == 6);
    CHECK_THROWS_AS(moment_sum(g, -1), std::domain_error);
    CHECK(moment_sum(10, 2) == 17);
}

TEST_CASE("half_range_moment small x") {
    CHECK(half_range_moment(10, 0) == 3);
    CHECK(half_range_moment(10, 1) == 5);
    CHECK(half_range_moment(4, 7) == 1);
    CHECK_THROWS_AS(half_range_moment(3, 1), std::domain_error);
}

TEST_CASE("alpha and B estimates") {
    const auto h = histogram(gap_stream(1, 10, 64), 10);
    CHECK(alpha_estimate(h, 1) == doctest::Approx(0.4));
    CHECK(alpha_estimate(h, 4) == 0);
    CHECK(b_estimate(h, 2) == doctest::Approx(1.7));
    CHECK(b_estimate(h, 0) == doctest::Approx(0.6));
}

TEST_CASE("gap_power uses exact integer powers") {
    CHECK(gap_power(3, 0) == 1);
    CHECK(gap_power(3, 4) == 81);
    CHECK(gap_power(7, 3) == 343);
    CHECK(gap_power(4, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("moments against brute force") {
    std::mt19937_64 gen(3);
    for (int i = 0; i < 10; ++i) {
        const uint64_t x = 16 + gen() % 30'000;
        const auto gaps = brute_gaps(x);
        for (double g : {0.0, 0.5, 1.0, 2.0, 3.5, 4.0}) {
            long double full = 0, half = 0;
            for (const auto& r : gaps) {
                const long double t = std::pow(static_cast<long double>(r.gap), g);
                full += t;
                if (r.next > x / 2) half += t;
            }
            CHECK(moment_sum(x, g) == doctest::Approx(static_cast<double>(full)).epsilon(1e-12));
            CHECK(half_range_moment(x, g) == doctest::Approx(static_cast<double>(half)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rearrangement identity on random gap sets") {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 50; ++i) {
        std::vector<GapRecord> gaps;
        uint64_t at = 1;
        const int n = 1 + static_cast<int>(gen() % 2000);
        for (int k = 0; k < n; ++k) {
            const uint64_t h = 1 + gen() % 20;
            gaps.push_back({at, at + h, h});
            at += h;
        }
        const auto hist = histogram(gaps, at);
        const double g = std::uniform_real_distribution<double>(0, 4)(gen);
        double by_h = 0;
        for (const auto& [h, c] : hist.counts) by_h += static_cast<double>(c) * std::pow(double(h), g);
        CHECK(std::abs(moment_sum(gaps, g) - by_h) <= 1e-9 * by_h);
    }
}

TEST_CASE("telescoping") {
    for (uint64_t x : {10u, 1000u, 65'537u, 200'000u}) {
        const auto s = oracle::squarefree_list(x);
        CHECK(moment_sum(x, 1.0) == static_cast<double>(s.back() - 1));
    }
}

TEST_CASE("MomentAccumulator merge and multiplicity") {
    MomentAccumulator a(2), b(2), all(2);
    for (uint64_t h = 1; h < 100; ++h) {
        (h % 2 ? a : b).add(h);
        all.add(h);
    }
    a.merge(b);
    CHECK(a.sum() == all.sum());
    CHECK(a.count() == all.count());
    MomentAccumulator m(3);
    m.add(2, 5);
    CHECK(m.sum() == 40);
    CHECK(m.count() == 5);
    CHECK_THROWS_AS(a.merge(MomentAccumulator(3)), std::invalid_argument);
}

TEST_CASE("summarize_gaps agrees with the per-function paths") {
    const std::vector<double> gammas{0, 1, 2.5};
    for (unsigned threads : {1u, 2u}) {
        const auto s = summarize_gaps(100'000, gammas, {256, threads});
        CHECK(s.squarefree_count == oracle::squarefree_list(100'000).size());
        CHECK(s.full.total() + 1 == s.squarefree_count);
        for (size_t i = 0; i < gammas.size(); ++i) {
            CHECK(s.full_moments[i].sum() == moment_sum(100'000, gammas[i]));
            CHECK(s.half_moments[i].sum() == half_range_moment(100'000, gammas[i]));
        }
    }
}

TEST_CASE("derive_params") {
    const auto p = derive_params(1'000'000, 3.0, 1.0, 16);
    CHECK(p.P0 == doctest::Approx(4 * std::log(16.0)));
    CHECK(p.P0 == doctest::Approx(11.090).epsilon(1e-4));
    CHECK(p.P1 == doctest::Approx(4096 * std::log(16.0)));
    CHECK(p.P1 == doctest::Approx(11356.5).epsilon(1e-5));
    const double D = 512 * std::pow(3 * std::log(16.0), 1.5);
    CHECK(p.D == doctest::Approx(D));
    CHECK(p.Dprime == doctest::Approx(2 * D * D));
    CHECK(p.P == 8);
    CHECK(p.K == 1);
    CHECK(p.L == 1);
    const double lx = std::log(1e6);
    CHECK(p.H0 == doctest::Approx(std::pow(lx / std::log(lx), 1 / 5.0)));
    CHECK(p.H1 == doctest::Approx(std::pow(1e6, 0.2) * lx));
    CHECK(p.P0 <= p.P1);

    CHECK_THROWS_AS(derive_params(1'000'000, 3.0, 1.0, 2), std::domain_error);
    CHECK_THROWS_AS(derive_params(1'000'000, 3.0, 1.0, 12), std::domain_error);
    CHECK_THROWS_AS(derive_params(8, 3.0, 1.0, 16), std::domain_error);
    CHECK_THROWS_AS(derive_params(1'000'000, 2.0, 1.0, 16), std::domain_error);
    CHECK_THROWS_AS(derive_params(1'000'000, 3.0, 0.0, 16), std::domain_error);
}

TEST_CASE("min_split") {
    auto [u, v] = min_split(5, 2, 4);
    CHECK(u == 2);
    CHECK(v == 4);
    CHECK(u + v >= std::min(5.0, 6.0));
    CHECK(min_split(0, 3, 7) == std::pair{0.0, 0.0});
    auto [s, t] = min_split(5, 0, 3);
    CHECK(s == 0);
    CHECK(t == 3);
    CHECK(s + t == std::min(5.0, 0.0 + 3.0));
    CHECK_THROWS_AS(min_split(-1, 0, 0), std::domain_error);
}

TEST_CASE("min_interpolate") {
    CHECK(min_interpolate(4, 4, 0.4) == doctest::Approx(4));
    CHECK(min_interpolate(1, 32, 0.4) == doctest::Approx(8));
    CHECK_THROWS_AS(min_interpolate(0, 1, 0.4), std::domain_error);
    CHECK_THROWS_AS(min_interpolate(1, 1, 1.5), std::domain_error);
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> pos(1e-6, 1e6), unit(0, 1);
    for (int i = 0; i < 10'000; ++i) {
        const double a = pos(gen), b = pos(gen);
        CHECK(min_interpolate(a, b, unit(gen)) >= std::min(a, b));
    }
}

TEST_CASE("CSV writers") {
    std::ostringstream h;
    write_histogram_csv(h, histogram(gap_stream(1, 10, 64), 10));
    CHECK(h.str() == "h,count\n1,4\n2,1\n3,1\n");
    std::ostringstream m;
    const std::vector<MomentRow> rows{{2.0, 10, 17.0}};
    write_moments_csv(m, rows);
    CHECK(m.str() == "gamma,x,sum,sum_over_x\n2,10,17,1.7\n");
}
