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

// Exact desk-scale counters for integers of the form p^2 q with p prime.
//
// Counting conventions:
//   * count_F, count_F_dyadic, count_S and count_case1a count pairs (p, q):
//     an integer divisible by two admissible prime squares is counted once
//     per prime.
//   * compute_T counts window positions i, i.e. distinct integers n + i.
// All products p^2 q are formed in 128-bit arithmetic.

#pragma once

#include <cstdint>
#include <vector>

#include "sqg/bounds.hpp"

namespace sqg {

struct PrimeSquareValue {
    uint32_t p = 0;
    uint64_t q = 0;
    uint64_t value = 0;  // p^2 q

    bool operator==(const PrimeSquareValue&) const = default;
};

// Every p^2 q in (lo, hi] with p prime in [p_lo, p_hi), sorted by value then p.
std::vector<PrimeSquareValue> prime_square_values(uint64_t lo, uint64_t hi, uint64_t p_lo, uint64_t p_hi);

// |{(p, q) : n < p^2 q <= n + H, p prime, p >= p_min}|
uint64_t count_F(uint64_t n, uint64_t H, double p_min);

// Same with P <= p < 2P.
uint64_t count_F_dyadic(uint64_t n, uint64_t H, uint64_t P);

// max over integers n in [x/2, x - H] of |{1 <= i <= H : n + i = p^2 q, P <= p < 2P}|,
// by a sliding window over the sorted value list. Requires x >= 4H and P >= 2.
// bound_value is the fifth-derivative bound x^{1/15}P^{8/15} + H^{1/6}P^{2/3} + H^{1/4}P/x^{1/4}.
CountReport compute_T(uint64_t x, uint64_t H, uint64_t P);

struct SextupleQuery {
    uint64_t x = 0;
    uint64_t H = 0;
    uint64_t P = 0;
    double D = 0.0;       // cap on gcd(q1, q2, q3)
    double Dprime = 0.0;  // cap on each pairwise gcd
};

struct SextupleCount {
    CountReport report;         // all sextuples, primes not necessarily distinct
    uint64_t distinct_primes = 0;  // those with p1, p2, p3 pairwise distinct
};

// Ordered sextuples (p1, p2, p3, q1, q2, q3), P <= p_i < 2P prime, with
//   x/2 <= p3^2 q3 < p2^2 q2 < p1^2 q1 <= min(x, p3^2 q3 + H - 1)
// and the gcd caps. bound_value = x / (H^{gamma-3} log^6 H); for H < 2 the
// log factor vanishes and the bound falls back to x.
SextupleCount count_S(const SextupleQuery& query, double gamma);

// Largest t >= 0 with t K L P^2 v <= sqrt(2) x, computed exactly.
uint64_t case1a_range(uint64_t x, uint64_t K, uint64_t L, uint64_t P, uint64_t v = 1);

// Quadruples (p1, p2, t, u), P <= p_i < 2P prime, 1 <= t, u <= sqrt(2) x / (K L P^2),
// with 1 <= |p1^2 t - p2^2 u| <= H / (K L).
CountReport count_case1a(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x);

// As count_case1a but only quadruples with p1 > p2 and gcd(t, u) = v. Used to
// check the reduction to the two-dimensional problem.
uint64_t count_case1a_ordered_gcd(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x, uint64_t v);

// Exact test of 0 < |sqrt(u/t) - p1/p2| <= H / (K L P^2 sqrt(u t) v).
bool two_dim_holds(uint64_t p1, uint64_t p2, uint64_t t, uint64_t u, uint64_t H, uint64_t K, uint64_t L,
                   uint64_t P, uint64_t v);

// (p1, p2, t', u') with P <= p2 < p1 < 2P prime, 1 <= t' <= u' <= sqrt(2) x / (K L P^2 v),
// gcd(u', t') = 1 and two_dim_holds.
uint64_t count_2dim(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x, uint64_t v);

}  // namespace sqg
