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

// Rational points (m/n, r/q) close to the curves F(u) = sqrt(k + u) on [0, 1].

#pragma once

#include <cstdint>
#include <string>

#include "sqg/bounds.hpp"

namespace sqg {

struct CurveSpec {
    int k = 1;          // 1, 2 or 3
    unsigned d = 1;     // derivative depth; F needs 2d + 2 derivatives
    double lambda = 1.0;
    double C = 100.0;
};

// r-th derivative of sqrt(k + u):
//   (1/2)(1/2 - 1)...(1/2 - r + 1) (k + u)^{1/2 - r}.
// Throws std::domain_error for r > 2d + 2 or u outside [0, 1].
double derivative(const CurveSpec& curve, unsigned r, double u);

// D_{r,s}(F(u)) = det(F^{(r+i-j)}(u) / (r+i-j)!)_{s x s}; entries with a
// negative derivative order are zero.
double derivative_determinant(const CurveSpec& curve, unsigned r, unsigned s, double u);

struct HypothesisReport {
    bool ok = true;
    std::string first_violation;  // empty when ok
    unsigned grid_points = 0;
};

// Checks |F^{(r)}| <= lambda C^{r+1} for r = 0..2d+2 and
// |D_{r,s}| >= (lambda / C^{r+1})^s for (r, s) = (d, d) and (d+1, 1..d+1)
// at grid_intervals + 1 uniform points of [0, 1] (endpoints included).
HypothesisReport check_hypotheses(const CurveSpec& curve, unsigned grid_intervals = 1000);

struct ClosePointQuery {
    CurveSpec curve;
    uint64_t M = 2;
    uint64_t Q = 2;
    double delta = 0.0;

    double T() const { return curve.lambda * static_cast<double>(Q) * static_cast<double>(Q); }
    double Delta() const { return delta * static_cast<double>(Q) * static_cast<double>(Q); }
    // Regime of the bound: Delta < 1/2 and T >= 4.
    bool in_regime() const { return Delta() < 0.5 && T() >= 4; }
};

// Tuples (m, n, r, q) with 0 <= m <= n, 1 <= n <= M, 1 <= q <= Q, r >= 1,
// gcd(m, n) = gcd(r, q) = 1 and |F(m/n) - r/q| <= delta.
// bound_value = ((MQ)^{2/3} + delta^{1/3} (MQ)^{4/3}) log(MQ).
// Throws std::domain_error for delta >= 1 or delta < 0.
CountReport count_close_points(const ClosePointQuery& query);

// |sqrt(k + m/n) - r/q|, using the exact integer numerator of
// (k + m/n) - (r/q)^2 so an exact hit returns exactly 0.
long double close_point_distance(int k, uint64_t m, uint64_t n, uint64_t r, uint64_t q);

struct DeltaThreshold {
    double delta = 0.0;  // H / (K L P^2 T' v)
    double Delta = 0.0;  // delta (2P)^2
    bool below_half = false;  // Delta < 1/2, evaluated exactly
};

DeltaThreshold delta_threshold(uint64_t H, uint64_t K, uint64_t L, uint64_t v, uint64_t Tprime, uint64_t P);

}  // namespace sqg
