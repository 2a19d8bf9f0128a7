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

#include "sqg/fractional_targets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sqg {

FractionalReport count_R(const FractionalQuery& query) {
    if (!(query.delta > 0) || query.delta > 0.25) throw std::domain_error("count_R: delta must lie in (0, 1/4]");
    if (query.M < 4) throw std::domain_error("count_R: M must be >= 4");

    using u128 = unsigned __int128;
    uint64_t hits = 0;
    for (uint64_t m = query.M; m <= 2 * query.M; ++m) {
        const u128 m2 = static_cast<u128>(m) * m;
        const u128 r = query.n % m2;
        const u128 dist = std::min(r, m2 - r);
        if (static_cast<long double>(dist) <= static_cast<long double>(query.delta) * static_cast<long double>(m2))
            ++hits;
    }

    const double P = static_cast<double>(query.M);
    const double x = 2.0 * static_cast<double>(query.n);
    const double H = query.delta * P * P;
    FractionalReport out;
    out.report = CountReport::make(hits, bounds::fifth_derivative(x, H, P));
    const double n = static_cast<double>(query.n);
    out.lambda5_lo = 720 * n / std::pow(2 * P, 7);
    out.lambda5_hi = 720 * n / std::pow(P, 7);
    out.lambda4_lo = 120 * n / std::pow(2 * P, 6);
    out.lambda4_hi = 120 * n / std::pow(P, 6);
    return out;
}

uint64_t max_R_sampled(uint64_t x, uint64_t H, uint64_t P, uint64_t seed, unsigned samples) {
    const double delta = static_cast<double>(H) / (static_cast<double>(P) * static_cast<double>(P));
    const uint64_t lo = (x + 1) / 2;
    const uint64_t span = x - lo + 1;
    auto R = [&](uint64_t n) { return count_R({n, P, delta}).report.exact; };

    uint64_t best = 0;
    if (span <= static_cast<uint64_t>(samples) + 2) {
        for (uint64_t n = lo; n <= x; ++n) best = std::max(best, R(n));
        return best;
    }
    best = std::max(R(lo), R(x));
    std::mt19937_64 gen(seed);
    for (unsigned i = 0; i < samples; ++i) best = std::max(best, R(lo + gen() % span));
    return best;
}

TBoundEvaluation evaluate_T_bound(double x, double H, double P, double gamma) {
    if (H < 4) throw std::domain_error("evaluate_T_bound: H must be >= 4");
    if (P < 2) throw std::domain_error("evaluate_T_bound: P must be >= 2");
    if (!(gamma >= 3)) throw std::domain_error("evaluate_T_bound: gamma must be >= 3");

    TBoundEvaluation e;
    e.terms = {std::pow(x, 1.0 / 15) * std::pow(P, 8.0 / 15), std::pow(H, 1.0 / 6) * std::pow(P, 2.0 / 3),
               std::pow(H, 0.25) * P / std::pow(x, 0.25)};
    e.bound = e.terms[0] + e.terms[1] + e.terms[2];
    const double lh = std::log(H);
    const double lh2 = lh * lh;
    e.thresholds = {std::pow(H, 15.0 / 8) / (std::pow(x, 1.0 / 8) * lh2), std::pow(H, 5.0 / 4) / lh2,
                    std::pow(H, 3.0 / 4) * std::pow(x, 0.25) / lh2};
    e.target = H / (64 * gamma * lh);
    e.small_T_implied = P <= e.thresholds[0] && P <= e.thresholds[1] && P <= e.thresholds[2];
    return e;
}

RegimeTable regime_table(double x, double gamma) {
    if (!(gamma >= 3 && gamma < 3.8)) throw std::domain_error("regime_table: gamma must lie in [3, 3.8)");
    if (!(x >= 16)) throw std::domain_error("regime_table: x must be >= 16");

    RegimeTable table;
    table.x = x;
    table.gamma = gamma;
    const double lx = std::log(x);
    table.H0 = std::pow(lx / std::log(lx), 1 / (gamma + 2));
    table.H1 = std::pow(x, 0.2) * lx;
    table.bridge_power = std::pow(x, 3 / (8 * gamma - 13));
    table.crossover_power = std::pow(x, 3 / (77 - 16 * gamma));
    const double fifth_root = std::pow(x, 0.2);
    const double bridge_literal = table.bridge_power / std::pow(lx, 22);
    const double crossover_literal = table.crossover_power * std::pow(lx, 7);

    const int e_lo = std::ilogb(std::max(table.H0, 2.0));
    const int e_hi = std::ilogb(table.H1);
    table.all_covered = true;
    for (int e = e_lo; e <= e_hi; ++e) {
        RegimeRow row;
        row.H = std::ldexp(1.0, e);
        const double lh = std::log(row.H);
        row.P0 = 0.25 * row.H * lh;
        row.P1 = std::pow(row.H, gamma) * lh;
        row.p_thresholds = {std::pow(row.H, 15.0 / 8) / (std::pow(x, 1.0 / 8) * lh * lh),
                            std::pow(row.H, 5.0 / 4) / (lh * lh),
                            std::pow(row.H, 3.0 / 4) * std::pow(x, 0.25) / (lh * lh)};
        row.bridge_literal = bridge_literal;
        row.crossover_literal = crossover_literal;
        row.bridge_literal_holds = row.H <= bridge_literal;
        row.crossover_literal_holds = row.H > crossover_literal;

        if (row.H <= table.bridge_power) row.covered_by.emplace_back("bridge");
        if (row.H > table.crossover_power) row.covered_by.emplace_back("crossover");
        if (row.H >= fifth_root) row.covered_by.emplace_back("no-window");
        row.covered = !row.covered_by.empty();
        table.all_covered = table.all_covered && row.covered;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace sqg
