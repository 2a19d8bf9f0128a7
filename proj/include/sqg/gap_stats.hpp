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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "sqg/sieve.hpp"

namespace sqg {

// counts[h] = number of consecutive squarefree pairs with next <= x and gap h.
struct GapHistogram {
    uint64_t x = 0;
    std::map<uint64_t, uint64_t> counts;

    void add(uint64_t gap) { ++counts[gap]; }
    void merge(const GapHistogram& other);
    uint64_t total() const;
    uint64_t at(uint64_t h) const;
};

// h^gamma. Integer gamma <= 4 is an exact integer power, anything else goes
// through exp(gamma log h).
double gap_power(uint64_t h, double gamma);

// Compensated (Neumaier) running sum of gap^gamma.
class MomentAccumulator {
public:
    explicit MomentAccumulator(double gamma);

    void add(uint64_t gap);
    // multiplicity copies of gap, added as a single product term.
    void add(uint64_t gap, uint64_t multiplicity);
    void merge(const MomentAccumulator& other);

    double gamma() const { return gamma_; }
    double sum() const { return sum_ + compensation_; }
    uint64_t count() const { return count_; }

private:
    void add_term(double term);

    double gamma_;
    double sum_ = 0.0;
    double compensation_ = 0.0;
    uint64_t count_ = 0;
};

GapHistogram histogram(std::span<const GapRecord> gaps, uint64_t x);

// Throws std::domain_error for gamma < 0.
double moment_sum(std::span<const GapRecord> gaps, double gamma);

// Sum of gap^gamma over every record with next <= x, starting from s_1 = 1.
double moment_sum(uint64_t x, double gamma, const SieveOptions& options = {});

// Sum over records with x/2 < next <= x. Requires x >= 4.
double half_range_moment(uint64_t x, double gamma, const SieveOptions& options = {});

// N_h(x) / x; zero when h never occurs.
double alpha_estimate(const GapHistogram& hist, uint64_t h);

// sum_h h^gamma N_h(x) / x.
double b_estimate(const GapHistogram& hist, double gamma);

// Everything the statistics layer needs from one pass over [1, x].
struct GapSummary {
    uint64_t x = 0;
    uint64_t squarefree_count = 0;
    uint64_t largest_squarefree = 0;
    GapHistogram full;  // next <= x
    GapHistogram half;  // x/2 < next <= x
    std::vector<MomentAccumulator> full_moments;
    std::vector<MomentAccumulator> half_moments;
};

GapSummary summarize_gaps(uint64_t x, std::span<const double> gammas, const SieveOptions& options = {});

// Dyadic parameter tuple of the moment argument, with every derived quantity.
struct DyadicParams {
    uint64_t x = 0;
    double gamma = 0.0;
    double C0 = 1.0;
    uint64_t H = 0;
    uint64_t P = 0;  // largest power of two <= P0
    uint64_t K = 1;
    uint64_t L = 1;
    uint64_t v = 1;

    double H0 = 0.0;      // (log x / log log x)^{1/(gamma+2)}
    double H1 = 0.0;      // C0 x^{1/5} log x
    double P0 = 0.0;      // H log H / 4
    double P1 = 0.0;      // H^gamma log H
    double D = 0.0;       // 2^9 (gamma log H)^{3/2}
    double Dprime = 0.0;  // 2 D^2

    double bridge_threshold = 0.0;     // x^{3/(8 gamma - 13)} / log^22 x
    double crossover_threshold = 0.0;  // x^{3/(77 - 16 gamma)} log^7 x
    // P thresholds beyond which the small-T condition is not implied:
    //   H^{15/8} / (x^{1/8} log^2 H),  H^{5/4} / log^2 H,  H^{3/4} x^{1/4} / log^2 H
    double p_threshold[3] = {0.0, 0.0, 0.0};
};

// Requires x >= 16, H >= 4 a power of two, gamma >= 3, C0 > 0; throws
// std::domain_error otherwise.
DyadicParams derive_params(uint64_t x, double gamma, double C0, uint64_t H);

// (min(a, b), min(a, c)); their sum is >= min(a, b + c) for a, b, c >= 0.
std::pair<double, double> min_split(double a, double b, double c);

// a^alpha b^{1-alpha} >= min(a, b) for a, b > 0 and alpha in [0, 1].
double min_interpolate(double a, double b, double alpha);

// CSV rows "h,count".
void write_histogram_csv(std::ostream& out, const GapHistogram& hist);

struct MomentRow {
    double gamma = 0.0;
    uint64_t x = 0;
    double sum = 0.0;
};

// CSV rows "gamma,x,sum,sum_over_x".
void write_moments_csv(std::ostream& out, std::span<const MomentRow> rows);

}  // namespace sqg
