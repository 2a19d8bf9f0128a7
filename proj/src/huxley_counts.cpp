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

#include "sqg/huxley_counts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqg/sieve.hpp"

namespace sqg {

namespace {

using u128 = unsigned __int128;

u128 mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("huxley_counts: 128-bit overflow");
    return r;
}

uint64_t isqrt128(u128 n) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

uint64_t checked_square_times(uint64_t p, uint64_t q) {
    u128 v = mul(mul(p, p), q);
    if (v > UINT64_MAX) throw std::overflow_error("huxley_counts: p^2 q exceeds 64 bits");
    return static_cast<uint64_t>(v);
}

}  // namespace

std::vector<PrimeSquareValue> prime_square_values(uint64_t lo, uint64_t hi, uint64_t p_lo, uint64_t p_hi) {
    std::vector<PrimeSquareValue> out;
    if (hi <= lo) return out;
    p_hi = std::min<uint64_t>(p_hi, isqrt(hi) + 1);
    for (uint32_t p : primes_in(p_lo, p_hi)) {
        const uint64_t p2 = uint64_t{p} * p;
        for (uint64_t q = lo / p2 + 1; q <= hi / p2; ++q) out.push_back({p, q, checked_square_times(p, q)});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.value != b.value ? a.value < b.value : a.p < b.p; });
    return out;
}

uint64_t count_F(uint64_t n, uint64_t H, double p_min) {
    const uint64_t top = n + H;
    const auto first = static_cast<uint64_t>(std::ceil(std::max(p_min, 2.0)));
    uint64_t total = 0;
    for (uint32_t p : primes_in(first, isqrt(top) + 1)) {
        const uint64_t p2 = uint64_t{p} * p;
        total += top / p2 - n / p2;
    }
    return total;
}

uint64_t count_F_dyadic(uint64_t n, uint64_t H, uint64_t P) {
    const uint64_t top = n + H;
    uint64_t total = 0;
    for (uint32_t p : primes_in(P, std::min<uint64_t>(2 * P, isqrt(top) + 1))) {
        const uint64_t p2 = uint64_t{p} * p;
        total += top / p2 - n / p2;
    }
    return total;
}

CountReport compute_T(uint64_t x, uint64_t H, uint64_t P) {
    if (H < 1) throw std::domain_error("compute_T: H must be >= 1");
    if (P < 2) throw std::domain_error("compute_T: P must be >= 2");
    if (x / 4 < H) throw std::domain_error("compute_T: need x >= 4H");

    const double bound = bounds::fifth_derivative(static_cast<double>(x), static_cast<double>(H), static_cast<double>(P));
    const uint64_t n_min = (x + 1) / 2;
    const uint64_t n_max = x - H;

    std::vector<uint64_t> values;
    for (const auto& v : prime_square_values(n_min, x, P, 2 * P)) values.push_back(v.value);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) return CountReport::make(0, bound);

    // Some maximizing window starts just below a value; the anchors are
    // nondecreasing, so both window edges only move forward.
    uint64_t best = 0;
    size_t lo = 0, hi = 0;
    for (uint64_t v : values) {
        const uint64_t n = std::clamp(v - 1, n_min, n_max);
        while (lo < values.size() && values[lo] <= n) ++lo;
        while (hi < values.size() && values[hi] <= n + H) ++hi;
        best = std::max<uint64_t>(best, hi - lo);
    }
    return CountReport::make(best, bound);
}

SextupleCount count_S(const SextupleQuery& query, double gamma) {
    if (query.P < 2) throw std::domain_error("count_S: P must be >= 2");
    if (query.x < 2) throw std::domain_error("count_S: x must be >= 2");
    if (query.H < 1) throw std::domain_error("count_S: H must be >= 1");
    if (!(query.D > 0) || !(query.Dprime > 0)) throw std::domain_error("count_S: D and D' must be positive");

    const double xd = static_cast<double>(query.x);
    const double hd = static_cast<double>(query.H);
    SextupleCount result;
    const double bound = query.H >= 2 ? bounds::sextuple(xd, hd, gamma) : xd;
    if (query.H == 1) {
        result.report = CountReport::make(0, bound);
        return result;
    }

    // Values in [ceil(x/2), x].
    const uint64_t lo = (query.x + 1) / 2 - 1;
    const auto list = prime_square_values(lo, query.x, query.P, 2 * query.P);
    const size_t n = list.size();

    // next_greater[i]: first index whose value exceeds list[i].value.
    std::vector<size_t> next_greater(n);
    for (size_t i = n; i-- > 0;)
        next_greater[i] = (i + 1 < n && list[i + 1].value == list[i].value) ? next_greater[i + 1] : i + 1;

    uint64_t total = 0, distinct = 0;
    for (size_t i = 0; i < n; ++i) {
        const auto& a3 = list[i];
        const uint64_t limit = std::min(query.x, a3.value + query.H - 1);
        for (size_t j = next_greater[i]; j < n && list[j].value <= limit; ++j) {
            const auto& a2 = list[j];
            const uint64_t g23 = std::gcd(a2.q, a3.q);
            if (static_cast<double>(g23) > query.Dprime) continue;
            for (size_t k = next_greater[j]; k < n && list[k].value <= limit; ++k) {
                const auto& a1 = list[k];
                const uint64_t g12 = std::gcd(a1.q, a2.q);
                const uint64_t g31 = std::gcd(a3.q, a1.q);
                if (static_cast<double>(g12) > query.Dprime || static_cast<double>(g31) > query.Dprime) continue;
                if (static_cast<double>(std::gcd(g12, a3.q)) > query.D) continue;
                ++total;
                if (a1.p != a2.p && a2.p != a3.p && a1.p != a3.p) ++distinct;
            }
        }
    }
    result.report = CountReport::make(total, bound);
    result.distinct_primes = distinct;
    return result;
}

uint64_t case1a_range(uint64_t x, uint64_t K, uint64_t L, uint64_t P, uint64_t v) {
    if (K < 1 || L < 1 || P < 1 || v < 1) throw std::domain_error("case1a_range: parameters must be >= 1");
    // t c <= sqrt(2) x  <=>  t c <= floor(sqrt(2 x^2)) since t c is an integer.
    const uint64_t root = isqrt128(mul(mul(2, x), x));
    const u128 c = mul(mul(mul(K, L), mul(P, P)), v);
    return static_cast<uint64_t>(root / c);
}

CountReport count_case1a(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x) {
    if (P < 2) throw std::domain_error("count_case1a: P must be >= 2");
    if (K < 1 || L < 1) throw std::domain_error("count_case1a: K and L must be >= 1");
    const double bound = bounds::case1a(static_cast<double>(H), static_cast<double>(K), static_cast<double>(L),
                                        static_cast<double>(P), static_cast<double>(x));
    const uint64_t width = H / (K * L);  // |difference| <= H/(KL) for an integer difference
    const uint64_t range = case1a_range(x, K, L, P);
    if (width < 1 || range < 1) return CountReport::make(0, bound);

    std::vector<uint64_t> values;
    for (uint32_t p : primes_in(P, 2 * P))
        for (uint64_t t = 1; t <= range; ++t) values.push_back(checked_square_times(p, t));
    std::sort(values.begin(), values.end());

    // For each a, count b with |a - b| <= width and subtract the b equal to a.
    uint64_t total = 0;
    size_t lo = 0, hi = 0, eq_lo = 0, eq_hi = 0;
    for (uint64_t a : values) {
        while (values[lo] + width < a) ++lo;
        while (hi < values.size() && values[hi] <= a + width) ++hi;
        while (values[eq_lo] < a) ++eq_lo;
        while (eq_hi < values.size() && values[eq_hi] <= a) ++eq_hi;
        total += (hi - lo) - (eq_hi - eq_lo);
    }
    return CountReport::make(total, bound);
}

uint64_t count_case1a_ordered_gcd(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x, uint64_t v) {
    const uint64_t width = H / (K * L);
    const uint64_t range = case1a_range(x, K, L, P);
    if (width < 1 || range < 1 || v < 1) return 0;
    const auto primes = primes_in(P, 2 * P);
    uint64_t total = 0;
    for (uint32_t p1 : primes)
        for (uint32_t p2 : primes) {
            if (p1 <= p2) continue;
            const uint64_t a2 = uint64_t{p1} * p1;
            const uint64_t b2 = uint64_t{p2} * p2;
            for (uint64_t t = 1; t <= range; ++t) {
                const uint64_t a = a2 * t;
                const uint64_t u_lo = a > width ? (a - width + b2 - 1) / b2 : 1;
                const uint64_t u_hi = std::min(range, (a + width) / b2);
                for (uint64_t u = std::max<uint64_t>(u_lo, 1); u <= u_hi; ++u) {
                    if (b2 * u == a) continue;
                    if (std::gcd(t, u) == v) ++total;
                }
            }
        }
    return total;
}

bool two_dim_holds(uint64_t p1, uint64_t p2, uint64_t t, uint64_t u, uint64_t H, uint64_t K, uint64_t L,
                   uint64_t P, uint64_t v) {
    if (mul(mul(p1, p1), t) == mul(mul(p2, p2), u)) return false;
    // Multiply through by p2 sqrt(u t) d with d = K L P^2 v:
    //   |u p2 d - p1 d sqrt(u t)| <= H p2.
    const u128 d = mul(mul(mul(K, L), mul(P, P)), v);
    const u128 center = mul(mul(u, p2), d);
    const u128 radius = mul(H, p2);
    const u128 target = mul(mul(mul(p1, p1), mul(u, t)), mul(d, d));
    const u128 upper = center + radius;
    if (target > mul(upper, upper)) return false;
    if (center <= radius) return true;
    const u128 lower = center - radius;
    return mul(lower, lower) <= target;
}

uint64_t count_2dim(uint64_t H, uint64_t K, uint64_t L, uint64_t P, uint64_t x, uint64_t v) {
    if (v < 1) throw std::domain_error("count_2dim: v must be >= 1");
    if (P < 2) throw std::domain_error("count_2dim: P must be >= 2");
    const uint64_t range = case1a_range(x, K, L, P, v);
    if (range < 1) return 0;

    const auto primes = primes_in(P, 2 * P);
    const long double radius = static_cast<long double>(H) /
                               (static_cast<long double>(K) * L * static_cast<long double>(P) * P * v);
    uint64_t total = 0;
    for (uint32_t p1 : primes)
        for (uint32_t p2 : primes) {
            if (p1 <= p2) continue;
            const long double a = static_cast<long double>(p1) / p2;
            for (uint64_t t = 1; t <= range; ++t) {
                // With s = sqrt(u) the condition reads |s^2 - a sqrt(t) s| <= radius:
                // s lies below the upper root of s^2 - a sqrt(t) s - radius and
                // outside the roots of s^2 - a sqrt(t) s + radius.
                const long double st = std::sqrt(static_cast<long double>(t));
                const long double s_hi = (a * st + std::sqrt(a * a * t + 4 * radius)) / 2;
                const long double disc = a * a * t - 4 * radius;

                auto u_of = [](long double s, long double pad) {
                    const long double sq = s * s + pad;
                    return sq <= 0 ? uint64_t{0} : static_cast<uint64_t>(std::min<long double>(sq, 1.8e19L));
                };
                std::pair<uint64_t, uint64_t> spans[2];
                int nspans = 0;
                if (disc < 0) {
                    spans[nspans++] = {t, u_of(s_hi, 2)};
                } else {
                    const long double root = std::sqrt(disc);
                    const long double s_a = (a * st - root) / 2;
                    const long double s_b = (a * st + root) / 2;
                    spans[nspans++] = {t, u_of(s_a, 2)};
                    spans[nspans++] = {std::max(t, u_of(s_b, -2)), u_of(s_hi, 2)};
                    if (spans[1].first <= spans[0].second + 1) {
                        spans[0].second = std::max(spans[0].second, spans[1].second);
                        nspans = 1;
                    }
                }
                for (int k = 0; k < nspans; ++k) {
                    const uint64_t u_hi = std::min(range, spans[k].second);
                    for (uint64_t u = spans[k].first; u <= u_hi; ++u)
                        if (std::gcd(u, t) == 1 && two_dim_holds(p1, p2, t, u, H, K, L, P, v)) ++total;
                }
            }
        }
    return total;
}

}  // namespace sqg
