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

// Integers m in [M, 2M] with n/m^2 close to an integer, and the regime
// arithmetic that decides when the small-T condition is implied.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sqg/bounds.hpp"

namespace sqg {

struct FractionalQuery {
    uint64_t n = 0;
    uint64_t M = 4;
    double delta = 0.25;
};

struct FractionalReport {
    CountReport report;
    // f(u) = n/u^2 on [M, 2M]: |f^(5)| = 720 n / u^7 and |f^(4)| = 120 n / u^6,
    // reported at both interval endpoints.
    double lambda5_lo = 0.0, lambda5_hi = 0.0;
    double lambda4_lo = 0.0, lambda4_hi = 0.0;
};

// R = |{m in [M, 2M] : ||n/m^2|| <= delta}| from the integer residue
// n mod m^2. The bound uses x = 2n, P = M and H = delta P^2.
// Throws std::domain_error unless 0 < delta <= 1/4 and M >= 4.
FractionalReport count_R(const FractionalQuery& query);

// max over n in [x/2, x] of count_R(n, P, H/P^2): the endpoints plus
// `samples` n drawn from a seeded generator. Requires H/P^2 <= 1/4.
uint64_t max_R_sampled(uint64_t x, uint64_t H, uint64_t P, uint64_t seed, unsigned samples = 256);

struct TBoundEvaluation {
    double bound = 0.0;                  // sum of the three terms
    std::array<double, 3> terms{};       // x^{1/15}P^{8/15}, H^{1/6}P^{2/3}, H^{1/4}P/x^{1/4}
    std::array<double, 3> thresholds{};  // H^{15/8}/(x^{1/8} log^2 H), H^{5/4}/log^2 H, H^{3/4}x^{1/4}/log^2 H
    double target = 0.0;                 // H / (64 gamma log H)
    bool small_T_implied = false;        // P at or below all three thresholds
};

// Requires H >= 4, P >= 2, gamma >= 3.
TBoundEvaluation evaluate_T_bound(double x, double H, double P, double gamma);

// One dyadic H of the regime table.
//
// The literal thresholds keep every log factor. The coverage verdict compares
// powers of x only, which is the form of the closing range argument:
//   "bridge"     H <= x^{3/(8 gamma - 13)}
//   "crossover"  H >  x^{3/(77 - 16 gamma)}
//   "no-window"  H >= x^{1/5}, so H^{15/8}/x^{1/8} >= H^{5/4} and no P falls
//                between the first and second small-T thresholds.
struct RegimeRow {
    double H = 0.0;
    double P0 = 0.0;
    double P1 = 0.0;
    std::array<double, 3> p_thresholds{};
    double bridge_literal = 0.0;     // x^{3/(8 gamma - 13)} / log^22 x
    double crossover_literal = 0.0;  // x^{3/(77 - 16 gamma)} log^7 x
    bool bridge_literal_holds = false;
    bool crossover_literal_holds = false;
    std::vector<std::string> covered_by;
    bool covered = false;
};

struct RegimeTable {
    double x = 0.0;
    double gamma = 0.0;
    double H0 = 0.0;
    double H1 = 0.0;
    double bridge_power = 0.0;     // x^{3/(8 gamma - 13)}
    double crossover_power = 0.0;  // x^{3/(77 - 16 gamma)}
    std::vector<RegimeRow> rows;
    bool all_covered = false;
};

// Dyadic H from the power of two at or below max(H0, 2) to the one at or
// below H1 = x^{1/5} log x. x is taken as a real number so the table can be
// evaluated beyond 64-bit range. Throws std::domain_error unless
// 3 <= gamma < 3.8 and x >= 16.
RegimeTable regime_table(double x, double gamma);

}  // namespace sqg
