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

#include "sqg/rational_points.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sqg {

namespace {

double factorial(unsigned n) {
    double f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

double determinant(std::vector<double> a, unsigned n) {
    double det = 1;
    for (unsigned c = 0; c < n; ++c) {
        unsigned pivot = c;
        for (unsigned r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[pivot * n + c])) pivot = r;
        if (a[pivot * n + c] == 0) return 0;
        if (pivot != c) {
            for (unsigned j = 0; j < n; ++j) std::swap(a[c * n + j], a[pivot * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (unsigned r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (unsigned j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

}  // namespace

double derivative(const CurveSpec& curve, unsigned r, double u) {
    if (r > 2 * curve.d + 2) throw std::domain_error("derivative: order exceeds 2d + 2");
    if (!(u >= 0 && u <= 1)) throw std::domain_error("derivative: u must lie in [0, 1]");
    double coeff = 1;
    for (unsigned i = 0; i < r; ++i) coeff *= 0.5 - i;
    return coeff * std::pow(curve.k + u, 0.5 - r);
}

double derivative_determinant(const CurveSpec& curve, unsigned r, unsigned s, double u) {
    std::vector<double> a(s * s, 0.0);
    for (unsigned i = 0; i < s; ++i)
        for (unsigned j = 0; j < s; ++j) {
            const int order = static_cast<int>(r + i) - static_cast<int>(j);
            if (order < 0) continue;
            a[i * s + j] = derivative(curve, static_cast<unsigned>(order), u) / factorial(order);
        }
    return determinant(std::move(a), s);
}

HypothesisReport check_hypotheses(const CurveSpec& curve, unsigned grid_intervals) {
    HypothesisReport report;
    report.grid_points = grid_intervals + 1;
    const unsigned d = curve.d;

    auto fail = [&](const std::string& what, double u, double value, double limit) {
        std::ostringstream os;
        os << what << " at u=" << u << ": " << value << " vs " << limit;
        report.ok = false;
        report.first_violation = os.str();
    };

    for (unsigned g = 0; g <= grid_intervals; ++g) {
        const double u = static_cast<double>(g) / grid_intervals;
        for (unsigned r = 0; r <= 2 * d + 2; ++r) {
            const double value = std::abs(derivative(curve, r, u));
            const double limit = curve.lambda * std::pow(curve.C, r + 1);
            if (value > limit) {
                fail("|F^(" + std::to_string(r) + ")| > lambda C^" + std::to_string(r + 1), u, value, limit);
                return report;
            }
        }
        auto check_det = [&](unsigned r, unsigned s) {
            const double value = std::abs(derivative_determinant(curve, r, s, u));
            const double limit = std::pow(curve.lambda / std::pow(curve.C, r + 1), s);
            if (value < limit) {
                fail("|D_{" + std::to_string(r) + "," + std::to_string(s) + "}| below bound", u, value, limit);
                return false;
            }
            return true;
        };
        if (!check_det(d, d)) return report;
        for (unsigned s = 1; s <= d + 1; ++s)
            if (!check_det(d + 1, s)) return report;
    }
    return report;
}

long double close_point_distance(int k, uint64_t m, uint64_t n, uint64_t r, uint64_t q) {
    // sqrt(a) - b = (a - b^2) / (sqrt(a) + b) with a - b^2 = ((k n + m) q^2 - r^2 n) / (n q^2).
    using i128 = __int128;
    const i128 num = static_cast<i128>(static_cast<uint64_t>(k) * n + m) * q * q - static_cast<i128>(r) * r * n;
    if (num == 0) return 0.0L;
    const long double a = static_cast<long double>(k) + static_cast<long double>(m) / n;
    const long double b = static_cast<long double>(r) / q;
    const long double diff = static_cast<long double>(num) /
                             (static_cast<long double>(n) * q * q * (std::sqrt(a) + b));
    return std::abs(diff);
}

CountReport count_close_points(const ClosePointQuery& query) {
    if (!(query.delta >= 0)) throw std::domain_error("count_close_points: delta must be >= 0");
    if (query.delta >= 1) throw std::domain_error("count_close_points: delta must be < 1");
    if (query.M < 1 || query.Q < 1) throw std::domain_error("count_close_points: M and Q must be >= 1");
    const int k = query.curve.k;
    const long double delta = query.delta;

    uint64_t total = 0;
    for (uint64_t n = 1; n <= query.M; ++n)
        for (uint64_t m = 0; m <= n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            const long double F = std::sqrt(static_cast<long double>(k) + static_cast<long double>(m) / n);
            for (uint64_t q = 1; q <= query.Q; ++q) {
                // Candidates r in [q(F - delta), q(F + delta)], widened by one on each side.
                const long double lo = std::floor(q * (F - delta)) - 1;
                const long double hi = std::ceil(q * (F + delta)) + 1;
                for (auto r = static_cast<uint64_t>(std::max<long double>(1, lo)); r <= static_cast<uint64_t>(hi); ++r) {
                    if (std::gcd(r, q) != 1) continue;
                    if (close_point_distance(k, m, n, r, q) <= delta) ++total;
                }
            }
        }
    return CountReport::make(
        total, bounds::close_points(static_cast<double>(query.M), static_cast<double>(query.Q), query.delta));
}

DeltaThreshold delta_threshold(uint64_t H, uint64_t K, uint64_t L, uint64_t v, uint64_t Tprime, uint64_t P) {
    if (H < 1 || K < 1 || L < 1 || v < 1 || Tprime < 1 || P < 1)
        throw std::domain_error("delta_threshold: inputs must be >= 1");
    DeltaThreshold out;
    const double p = static_cast<double>(P);
    out.delta = static_cast<double>(H) /
                (static_cast<double>(K) * L * p * p * static_cast<double>(Tprime) * static_cast<double>(v));
    out.Delta = out.delta * (2 * p) * (2 * p);
    // Delta = 4H / (K L T' v) < 1/2  <=>  8H < K L T' v.
    out.below_half = static_cast<unsigned __int128>(8) * H <
                     static_cast<unsigned __int128>(K) * L * Tprime * v;
    return out;
}

}  // namespace sqg
