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

#include "sqg/gap_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "sqg/csv.hpp"

namespace sqg {

void GapHistogram::merge(const GapHistogram& other) {
    for (auto [h, c] : other.counts) counts[h] += c;
    x = std::max(x, other.x);
}

uint64_t GapHistogram::total() const {
    uint64_t t = 0;
    for (auto [h, c] : counts) t += c;
    return t;
}

uint64_t GapHistogram::at(uint64_t h) const {
    auto it = counts.find(h);
    return it == counts.end() ? 0 : it->second;
}

double gap_power(uint64_t h, double gamma) {
    if (gamma < 0) throw std::domain_error("gap_power: gamma must be >= 0");
    if (gamma <= 4 && gamma == std::floor(gamma)) {
        double r = 1.0;
        const double hd = static_cast<double>(h);
        for (int i = 0; i < static_cast<int>(gamma); ++i) r *= hd;
        return r;
    }
    return std::exp(gamma * std::log(static_cast<double>(h)));
}

MomentAccumulator::MomentAccumulator(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0)) throw std::domain_error("MomentAccumulator: gamma must be >= 0");
}

void MomentAccumulator::add_term(double term) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term))
        compensation_ += (sum_ - t) + term;
    else
        compensation_ += (term - t) + sum_;
    sum_ = t;
}

void MomentAccumulator::add(uint64_t gap) {
    add_term(gap_power(gap, gamma_));
    ++count_;
}

void MomentAccumulator::add(uint64_t gap, uint64_t multiplicity) {
    add_term(gap_power(gap, gamma_) * static_cast<double>(multiplicity));
    count_ += multiplicity;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.gamma_ != gamma_) throw std::invalid_argument("MomentAccumulator::merge: gamma mismatch");
    add_term(other.sum_);
    add_term(other.compensation_);
    count_ += other.count_;
}

GapHistogram histogram(std::span<const GapRecord> gaps, uint64_t x) {
    GapHistogram hist;
    hist.x = x;
    for (const auto& g : gaps) hist.add(g.gap);
    return hist;
}

double moment_sum(std::span<const GapRecord> gaps, double gamma) {
    MomentAccumulator acc(gamma);
    for (const auto& g : gaps) acc.add(g.gap);
    return acc.sum();
}

double moment_sum(uint64_t x, double gamma, const SieveOptions& options) {
    MomentAccumulator acc(gamma);
    if (x >= 2)
        for_each_gap(1, x, options, [&](std::span<const GapRecord> batch) {
            for (const auto& g : batch) acc.add(g.gap);
        });
    return acc.sum();
}

double half_range_moment(uint64_t x, double gamma, const SieveOptions& options) {
    if (x < 4) throw std::domain_error("half_range_moment: x must be >= 4");
    MomentAccumulator acc(gamma);
    // next > x/2 with next integral is next > floor(x/2).
    for_each_gap(x / 2, x, options, [&](std::span<const GapRecord> batch) {
        for (const auto& g : batch) acc.add(g.gap);
    });
    return acc.sum();
}

double alpha_estimate(const GapHistogram& hist, uint64_t h) {
    if (h < 1) throw std::domain_error("alpha_estimate: h must be >= 1");
    if (hist.x < 1) throw std::domain_error("alpha_estimate: histogram x must be >= 1");
    return static_cast<double>(hist.at(h)) / static_cast<double>(hist.x);
}

double b_estimate(const GapHistogram& hist, double gamma) {
    if (hist.x < 1) throw std::domain_error("b_estimate: histogram x must be >= 1");
    MomentAccumulator acc(gamma);
    for (auto [h, c] : hist.counts) acc.add(h, c);
    return acc.sum() / static_cast<double>(hist.x);
}

GapSummary summarize_gaps(uint64_t x, std::span<const double> gammas, const SieveOptions& options) {
    if (x < 1) throw std::domain_error("summarize_gaps: x must be >= 1");
    GapSummary s;
    s.x = x;
    s.full.x = x;
    s.half.x = x;
    for (double g : gammas) {
        s.full_moments.emplace_back(g);
        s.half_moments.emplace_back(g);
    }
    s.squarefree_count = 1;
    s.largest_squarefree = 1;
    if (x == 1) return s;

    const uint64_t half_floor = x / 2;
    for_each_gap(1, x, options, [&](std::span<const GapRecord> batch) {
        for (const auto& g : batch) {
            s.full.add(g.gap);
            for (auto& m : s.full_moments) m.add(g.gap);
            if (g.next > half_floor) {
                s.half.add(g.gap);
                for (auto& m : s.half_moments) m.add(g.gap);
            }
        }
        s.squarefree_count += batch.size();
        s.largest_squarefree = batch.back().next;
    });
    return s;
}

DyadicParams derive_params(uint64_t x, double gamma, double C0, uint64_t H) {
    if (x < 16) throw std::domain_error("derive_params: x must be >= 16");
    if (H < 4) throw std::domain_error("derive_params: H must be >= 4");
    if (!std::has_single_bit(H)) throw std::domain_error("derive_params: H must be a power of two");
    if (!(gamma >= 3)) throw std::domain_error("derive_params: gamma must be >= 3");
    if (!(C0 > 0)) throw std::domain_error("derive_params: C0 must be > 0");

    DyadicParams p;
    p.x = x;
    p.gamma = gamma;
    p.C0 = C0;
    p.H = H;

    const double lx = std::log(static_cast<double>(x));
    const double xd = static_cast<double>(x);
    const double hd = static_cast<double>(H);
    const double lh = std::log(hd);

    p.H0 = std::pow(lx / std::log(lx), 1.0 / (gamma + 2));
    p.H1 = C0 * std::pow(xd, 0.2) * lx;
    p.P0 = 0.25 * hd * lh;
    p.P1 = std::pow(hd, gamma) * lh;
    p.D = 512.0 * std::pow(gamma * lh, 1.5);
    p.Dprime = 2 * p.D * p.D;
    p.P = std::max<uint64_t>(2, std::bit_floor(static_cast<uint64_t>(p.P0)));

    p.bridge_threshold = std::pow(xd, 3 / (8 * gamma - 13)) / std::pow(lx, 22);
    p.crossover_threshold = 77 - 16 * gamma > 0 ? std::pow(xd, 3 / (77 - 16 * gamma)) * std::pow(lx, 7)
                                                : std::numeric_limits<double>::infinity();
    const double lh2 = lh * lh;
    p.p_threshold[0] = std::pow(hd, 15.0 / 8) / (std::pow(xd, 1.0 / 8) * lh2);
    p.p_threshold[1] = std::pow(hd, 5.0 / 4) / lh2;
    p.p_threshold[2] = std::pow(hd, 3.0 / 4) * std::pow(xd, 0.25) / lh2;
    return p;
}

std::pair<double, double> min_split(double a, double b, double c) {
    if (a < 0 || b < 0 || c < 0) throw std::domain_error("min_split: inputs must be non-negative");
    return {std::min(a, b), std::min(a, c)};
}

double min_interpolate(double a, double b, double alpha) {
    if (!(a > 0) || !(b > 0)) throw std::domain_error("min_interpolate: a and b must be positive");
    if (!(alpha >= 0 && alpha <= 1)) throw std::domain_error("min_interpolate: alpha must lie in [0, 1]");
    // Written as min * (max/min)^w so the floating result never drops below min.
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double w = a >= b ? alpha : 1 - alpha;
    return lo * std::pow(hi / lo, w);
}

void write_histogram_csv(std::ostream& out, const GapHistogram& hist) {
    out << "h,count\n";
    for (auto [h, c] : hist.counts) out << h << ',' << c << '\n';
}

void write_moments_csv(std::ostream& out, std::span<const MomentRow> rows) {
    out << "gamma,x,sum,sum_over_x\n";
    for (const auto& r : rows)
        out << format_double(r.gamma) << ',' << r.x << ',' << format_double(r.sum) << ','
            << format_double(r.sum / static_cast<double>(r.x)) << '\n';
}

}  // namespace sqg
