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

#include "sqg/report.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sqg/csv.hpp"
#include "sqg/fractional_targets.hpp"
#include "sqg/gap_stats.hpp"
#include "sqg/huxley_counts.hpp"
#include "sqg/parallel.hpp"
#include "sqg/rational_points.hpp"
#include "sqg/sieve.hpp"

namespace sqg {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCommandNames[] = {"sieve",  "gaps",       "moments", "mirsky", "counts",
                                         "rpoints", "fractional", "regimes", "report"};

void append_json(std::string& s, const json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    switch (j.type()) {
        case json::value_t::number_float: {
            const double v = j.get<double>();
            s += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        case json::value_t::object: {
            if (j.empty()) {
                s += "{}";
                return;
            }
            s += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) s += ",\n";
                first = false;
                s += pad + json(key).dump() + ": ";
                append_json(s, value, depth + 1);
            }
            s += "\n" + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                s += "[]";
                return;
            }
            s += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) s += ",\n";
                s += pad;
                append_json(s, j[i], depth + 1);
            }
            s += "\n" + close_pad + "]";
            return;
        }
        default:
            s += j.dump();
    }
}

json to_json(const CountReport& r) {
    return {{"exact", r.exact}, {"bound_value", r.bound_value}, {"fitted_constant", r.fitted_constant}};
}

// round(lo 2^{j/r}) for j = 0 .. r log2(hi/lo); lo and hi are powers of two.
std::vector<uint64_t> geometric_points(uint64_t lo, uint64_t hi, unsigned resolution) {
    std::vector<uint64_t> out;
    if (hi < lo) return out;
    const int steps = static_cast<int>(resolution) * (std::countr_zero(hi) - std::countr_zero(lo));
    for (int j = 0; j <= steps; ++j) {
        const auto v = static_cast<uint64_t>(std::llround(static_cast<double>(lo) * std::exp2(static_cast<double>(j) / resolution)));
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
}

uint64_t floor_pow2(double v) { return v < 1 ? 1 : std::bit_floor(static_cast<uint64_t>(v)); }

BoundFit finish_fit(std::string name, unsigned resolution, std::vector<FitRow> rows) {
    BoundFit fit;
    fit.name = std::move(name);
    fit.resolution = resolution;
    fit.rows = std::move(rows);
    for (const auto& r : fit.rows) fit.max_fitted = std::max(fit.max_fitted, r.fitted_constant);
    return fit;
}

json fit_to_json(const BoundFit& fit) {
    json rows = json::array();
    for (const auto& r : fit.rows) {
        json row;
        for (const auto& [k, v] : r.params) row[k] = v;
        row["exact"] = r.exact;
        row["bound_value"] = r.bound_value;
        row["fitted_constant"] = r.fitted_constant;
        rows.push_back(std::move(row));
    }
    return {{"name", fit.name}, {"resolution", fit.resolution}, {"max_fitted", fit.max_fitted}, {"rows", rows}};
}

json regime_to_json(const RegimeTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"H", r.H},
                        {"P0", r.P0},
                        {"P1", r.P1},
                        {"p_thresholds", r.p_thresholds},
                        {"bridge_literal_holds", r.bridge_literal_holds},
                        {"crossover_literal_holds", r.crossover_literal_holds},
                        {"covered_by", r.covered_by},
                        {"covered", r.covered}});
    }
    const double bridge_literal = t.rows.empty() ? 0.0 : t.rows.front().bridge_literal;
    const double crossover_literal = t.rows.empty() ? 0.0 : t.rows.front().crossover_literal;
    return {{"x", t.x},
            {"gamma", t.gamma},
            {"H0", t.H0},
            {"H1", t.H1},
            {"bridge_power", t.bridge_power},
            {"crossover_power", t.crossover_power},
            {"bridge_literal", bridge_literal},
            {"crossover_literal", crossover_literal},
            {"rows", rows},
            {"all_covered", t.all_covered}};
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

SieveOptions sieve_options(const RunConfig& c) { return {c.segment_size, c.threads}; }

double max_gamma(const RunConfig& c) { return *std::max_element(c.gamma.begin(), c.gamma.end()); }

std::string gamma_text(double g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

// Product of (1 - 2/p^2) over p < limit.
double alpha1_product(uint64_t limit) {
    long double prod = 1;
    for (uint32_t p : primes_up_to(limit - 1)) prod *= 1.0L - 2.0L / (static_cast<long double>(p) * p);
    return static_cast<double>(prod);
}

}  // namespace

Command parse_command(const std::string& name) {
    for (size_t i = 0; i < std::size(kCommandNames); ++i)
        if (name == kCommandNames[i]) return static_cast<Command>(i);
    throw UsageError("unknown command: " + name);
}

std::string to_string(Command c) { return kCommandNames[static_cast<size_t>(c)]; }

std::string to_json_text(const json& doc) {
    std::string s;
    append_json(s, doc, 0);
    s += '\n';
    return s;
}

uint64_t parse_count(const std::string& text) {
    auto fail = [&] { return UsageError("not a nonnegative integer: '" + text + "'"); };
    if (text.empty()) throw fail();
    if (const auto caret = text.find('^'); caret != std::string::npos) {
        const uint64_t base = parse_count(text.substr(0, caret));
        const uint64_t exp = parse_count(text.substr(caret + 1));
        uint64_t v = 1;
        for (uint64_t i = 0; i < exp; ++i) {
            if (base != 0 && v > UINT64_MAX / base) throw UsageError("value out of range: '" + text + "'");
            v *= base;
        }
        return v;
    }
    if (text.find_first_not_of("0123456789") == std::string::npos) {
        errno = 0;
        const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
        if (errno == ERANGE) throw UsageError("value out of range: '" + text + "'");
        return v;
    }
    char* end = nullptr;
    const long double v = std::strtold(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !(v >= 0) || v != std::floor(v)) throw fail();
    if (v >= 18446744073709551616.0L) throw UsageError("value out of range: '" + text + "'");
    return static_cast<uint64_t>(v);
}

std::vector<double> parse_gamma_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        char* end = nullptr;
        const double g = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) throw UsageError("bad gamma value: '" + item + "'");
        out.push_back(g);
    }
    if (out.empty()) throw UsageError("empty gamma list");
    return out;
}

void RunConfig::validate() const {
    if (segment_size < 64 || !std::has_single_bit(segment_size))
        throw UsageError("--segment-size must be a power of two >= 64");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    if (gamma.empty()) throw UsageError("--gamma must not be empty");
    for (double g : gamma)
        if (!(g >= 0 && g <= 4)) throw UsageError("--gamma entries must lie in [0, 4]");
    if (x < 1) throw UsageError("--x must be >= 1");

    switch (command) {
        case Command::sieve:
            if (x_lo < 1 || x_lo > x) throw UsageError("sieve needs 1 <= --x-lo <= --x");
            if (x - x_lo >= UINT32_MAX) throw UsageError("sieve range exceeds 2^32 - 1 integers");
            break;
        case Command::gaps:
            if (x_lo >= x) throw UsageError("gaps needs --x-lo < --x");
            break;
        case Command::moments:
            if (x < 4) throw UsageError("moments needs --x >= 4");
            break;
        case Command::mirsky:
            break;
        case Command::counts:
            if (H < 1 || P < 2 || K < 1 || L < 1) throw UsageError("counts needs H >= 1, P >= 2, K >= 1, L >= 1");
            if (x / 4 < H) throw UsageError("counts needs --x >= 4 H");
            if (H / (K * L) < 1) throw UsageError("counts needs H >= K L");
            break;
        case Command::rpoints:
            if (curve_k < 1 || curve_k > 3) throw UsageError("--curve-k must be 1, 2 or 3");
            if (M < 1 || Q < 1) throw UsageError("rpoints needs M, Q >= 1");
            if (!(delta >= 0 && delta < 1)) throw UsageError("rpoints needs 0 <= delta < 1");
            break;
        case Command::fractional:
            if (M < 4) throw UsageError("fractional needs --M >= 4");
            if (!(delta > 0 && delta <= 0.25)) throw UsageError("fractional needs 0 < delta <= 1/4");
            break;
        case Command::regimes:
            for (double g : gamma)
                if (!(g >= 3 && g < 3.8)) throw UsageError("regimes needs gamma in [3, 3.8)");
            if (x < 16) throw UsageError("regimes needs --x >= 16");
            break;
        case Command::report:
            if (x < 1000) throw UsageError("report needs --x >= 1000");
            break;
    }
}

BoundFit fit_fifth_derivative(unsigned resolution, unsigned threads) {
    struct Task {
        uint64_t x, H, P;
    };
    std::vector<Task> tasks;
    for (uint64_t x : {uint64_t{1'000'000}, uint64_t{10'000'000}}) {
        const double lx = std::log(static_cast<double>(x));
        const uint64_t H_top = floor_pow2(std::pow(static_cast<double>(x), 0.2) * lx);
        const uint64_t sqrt_x = isqrt(x);
        for (uint64_t H : geometric_points(4, H_top, resolution)) {
            const double lh = std::log(static_cast<double>(H));
            const uint64_t P_lo = floor_pow2(std::max(2.0, 0.25 * H * lh));
            const uint64_t P_hi = floor_pow2(std::min(std::pow(static_cast<double>(H), 3.0) * lh, double(sqrt_x)));
            for (uint64_t P : geometric_points(P_lo, P_hi, resolution)) tasks.push_back({x, H, P});
        }
    }
    auto rows = parallel_map(tasks.size(), threads, [&](size_t i) {
        const auto& t = tasks[i];
        const CountReport r = compute_T(t.x, t.H, t.P);
        return FitRow{{{"x", double(t.x)}, {"H", double(t.H)}, {"P", double(t.P)}},
                      r.exact,
                      r.bound_value,
                      r.fitted_constant};
    });
    return finish_fit("fifth_derivative_T", resolution, std::move(rows));
}

BoundFit fit_close_points(unsigned resolution, unsigned threads) {
    struct Task {
        int k;
        uint64_t M, Q;
        double Delta;
    };
    std::vector<Task> tasks;
    const auto sizes = geometric_points(4, 128, resolution);
    std::vector<double> deltas;
    for (unsigned j = 0; j <= 2 * resolution; ++j) deltas.push_back(std::exp2(-4.0 + static_cast<double>(j) / resolution));
    for (int k = 1; k <= 3; ++k)
        for (uint64_t Q : sizes)
            for (uint64_t M : sizes) {
                if (M > Q) break;
                for (double D : deltas) tasks.push_back({k, M, Q, D});
            }
    auto rows = parallel_map(tasks.size(), threads, [&](size_t i) {
        const auto& t = tasks[i];
        ClosePointQuery q;
        q.curve.k = t.k;
        q.M = t.M;
        q.Q = t.Q;
        q.delta = t.Delta / (static_cast<double>(t.Q) * static_cast<double>(t.Q));
        const CountReport r = count_close_points(q);
        return FitRow{{{"k", double(t.k)}, {"M", double(t.M)}, {"Q", double(t.Q)}, {"Delta", t.Delta}, {"delta", q.delta}},
                      r.exact,
                      r.bound_value,
                      r.fitted_constant};
    });
    return finish_fit("close_points", resolution, std::move(rows));
}

BoundFit fit_case1a(unsigned resolution, unsigned threads) {
    struct Task {
        uint64_t x, K, P, H;
    };
    std::vector<Task> tasks;
    for (uint64_t x : {uint64_t{100'000}, uint64_t{1'000'000}})
        for (uint64_t K : {uint64_t{1}, uint64_t{2}})
            for (uint64_t P : geometric_points(4, 32, resolution))
                for (uint64_t H : geometric_points(4, 64, resolution)) tasks.push_back({x, K, P, H});
    auto rows = parallel_map(tasks.size(), threads, [&](size_t i) {
        const auto& t = tasks[i];
        const CountReport r = count_case1a(t.H, t.K, t.K, t.P, t.x);
        return FitRow{{{"x", double(t.x)}, {"K", double(t.K)}, {"L", double(t.K)}, {"P", double(t.P)}, {"H", double(t.H)}},
                      r.exact,
                      r.bound_value,
                      r.fitted_constant};
    });
    return finish_fit("case1a", resolution, std::move(rows));
}

bool ReportResult::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ReportResult build_report(const RunConfig& config) {
    ReportResult result;
    json& doc = result.document;
    auto check = [&](std::string name, bool pass, std::string detail = {}) {
        result.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    const uint64_t x = config.x;
    const SieveOptions opts = sieve_options(config);

    doc["schema"] = 1;
    doc["config"] = {{"x", x},
                     {"gamma", config.gamma},
                     {"segment_size", config.segment_size},
                     {"threads", config.threads},
                     {"seed", config.seed}};

    // Sieve and gap statistics, one pass over [1, x].
    std::vector<double> gammas = config.gamma;
    for (double g : {1.0, 2.0})
        if (std::find(gammas.begin(), gammas.end(), g) == gammas.end()) gammas.push_back(g);
    const GapSummary s = summarize_gaps(x, gammas, opts);
    auto moment_of = [&](const std::vector<MomentAccumulator>& accs, double g) {
        return std::find_if(accs.begin(), accs.end(), [&](const auto& a) { return a.gamma() == g; })->sum();
    };

    {
        const uint64_t limit = std::min<uint64_t>(x, 100'000);
        const SegmentBitmap bits = sieve_segment(1, static_cast<uint32_t>(limit));
        uint64_t mismatches = 0;
        for (uint64_t n = 1; n <= limit; ++n) mismatches += bits.is_squarefree(n) != is_squarefree_oracle(n);
        check("sieve_matches_trial_division", mismatches == 0,
              std::to_string(mismatches) + " mismatches for n <= " + std::to_string(limit));

        std::vector<uint64_t> first;
        for (uint64_t n = 1; first.size() < 7; ++n)
            if (bits.is_squarefree(n)) first.push_back(n);
        check("first_seven_squarefree", first == std::vector<uint64_t>{1, 2, 3, 5, 6, 7, 10});

        const double density = static_cast<double>(s.squarefree_count) / static_cast<double>(x);
        const double target = 6 / (std::numbers::pi * std::numbers::pi);
        doc["sieve"] = {{"x", x},
                        {"squarefree_count", s.squarefree_count},
                        {"largest_squarefree", s.largest_squarefree},
                        {"density", density},
                        {"density_target", target},
                        {"density_error", std::abs(density - target)},
                        {"first_seven", first}};
    }

    {
        const double telescoped = moment_of(s.full_moments, 1.0);
        check("telescoping_gamma_1", telescoped == static_cast<double>(s.largest_squarefree - 1),
              format_double(telescoped) + " vs " + std::to_string(s.largest_squarefree - 1));
        check("histogram_total", s.full.total() + 1 == s.squarefree_count);
    }

    {
        // Gaps with next <= x/2 are the full histogram minus the half-range one.
        GapHistogram lower;
        lower.x = x / 2;
        for (const auto& [h, c] : s.full.counts)
            if (const uint64_t rest = c - s.half.at(h)) lower.counts[h] = rest;

        json rows = json::array();
        double worst_rearrangement = 0;
        for (double g : config.gamma) {
            const double full = moment_of(s.full_moments, g);
            const double half = moment_of(s.half_moments, g);
            const double from_hist = b_estimate(s.full, g) * static_cast<double>(x);
            const double rel = std::abs(full - from_hist) / std::max(std::abs(full), 1e-300);
            worst_rearrangement = std::max(worst_rearrangement, rel);
            rows.push_back({{"gamma", g},
                            {"moment_sum", full},
                            {"moment_over_x", full / static_cast<double>(x)},
                            {"half_range_moment", half},
                            {"half_over_x", half / static_cast<double>(x)},
                            {"half_full_ratio", half / full},
                            {"histogram_sum", from_hist},
                            {"rearrangement_rel_error", rel}});
        }
        doc["moments"] = rows;
        check("rearrangement_identity", worst_rearrangement <= 1e-9,
              "max relative error " + format_double(worst_rearrangement));

        const double b_x = b_estimate(s.full, 2.0);
        const double b_half = b_estimate(lower, 2.0);
        doc["b_stability"] = {{"gamma", 2.0},
                              {"x", x},
                              {"b_hat_x", b_x},
                              {"x_half", x / 2},
                              {"b_hat_x_half", b_half},
                              {"relative_change", std::abs(b_x - b_half) / b_x}};
    }

    {
        json alpha = json::array();
        for (const auto& [h, c] : s.full.counts)
            alpha.push_back({{"h", h}, {"count", c}, {"alpha_hat", alpha_estimate(s.full, h)}});
        const double oracle = alpha1_product(1'000'000);
        const double a1 = alpha_estimate(s.full, 1);
        doc["mirsky"] = {{"alpha", alpha},
                         {"alpha1_hat", a1},
                         {"alpha1_product_oracle", oracle},
                         {"alpha1_error", std::abs(a1 - oracle)}};
    }

    // Parameter tuples and the small-T evaluation at each dyadic H.
    {
        json params = json::array();
        for (double g : {3.0, 3.5}) {
            const double H1 = std::pow(static_cast<double>(x), 0.2) * std::log(static_cast<double>(x));
            for (uint64_t H = 4; static_cast<double>(H) <= H1; H *= 2) {
                const DyadicParams p = derive_params(x, g, 1.0, H);
                const TBoundEvaluation e = evaluate_T_bound(static_cast<double>(x), static_cast<double>(H),
                                                            static_cast<double>(p.P), g);
                params.push_back({{"gamma", g},
                                  {"H", H},
                                  {"P", p.P},
                                  {"H0", p.H0},
                                  {"H1", p.H1},
                                  {"P0", p.P0},
                                  {"P1", p.P1},
                                  {"D", p.D},
                                  {"Dprime", p.Dprime},
                                  {"p_thresholds", std::vector<double>(p.p_threshold, p.p_threshold + 3)},
                                  {"T_bound", e.bound},
                                  {"T_target", e.target},
                                  {"small_T_implied", e.small_T_implied}});
            }
        }
        doc["params"] = params;
    }

    // Counting experiments outside the fitted grids.
    {
        json counts;

        json sext = json::array();
        for (uint64_t sx : {uint64_t{100'000}, uint64_t{1'000'000}})
            for (uint64_t H : {4, 8, 16}) {
                const DyadicParams p = derive_params(sx, 3.0, 1.0, H);
                const SextupleCount c = count_S({sx, H, p.P, p.D, p.Dprime}, 3.0);
                json row = {{"x", sx}, {"H", H}, {"P", p.P}, {"D", p.D}, {"Dprime", p.Dprime}};
                row.update(to_json(c.report));
                row["distinct_primes"] = c.distinct_primes;
                sext.push_back(std::move(row));
            }
        counts["S"] = sext;

        json two_dim = json::array();
        for (uint64_t P : {8, 16, 32})
            for (uint64_t H : {4, 8})
                for (uint64_t v : {1, 2}) {
                    const uint64_t tx = 1'000'000;
                    two_dim.push_back({{"x", tx},
                                       {"H", H},
                                       {"K", 1},
                                       {"L", 1},
                                       {"P", P},
                                       {"v", v},
                                       {"two_dim", count_2dim(H, 1, 1, P, tx, v)},
                                       {"case1a_ordered_gcd_v", count_case1a_ordered_gcd(H, 1, 1, P, tx, v)}});
                }
        counts["two_dim"] = two_dim;

        json fractional = json::array();
        std::mt19937_64 gen(config.seed);
        for (int i = 0; i < 4; ++i) {
            const uint64_t n = 1'000'000 + gen() % 9'000'001;
            for (uint64_t M : {8, 32})
                for (double d : {0.0625, 0.25}) {
                    const FractionalReport r = count_R({n, M, d});
                    json row = {{"n", n}, {"M", M}, {"delta", d}};
                    row.update(to_json(r.report));
                    row["lambda5"] = {r.lambda5_lo, r.lambda5_hi};
                    row["lambda4"] = {r.lambda4_lo, r.lambda4_hi};
                    fractional.push_back(std::move(row));
                }
        }
        counts["R"] = fractional;

        json max_r = json::array();
        for (auto [H, P] : {std::pair<uint64_t, uint64_t>{16, 16}, {64, 32}, {64, 64}}) {
            const uint64_t rx = 10'000'000;
            max_r.push_back({{"x", rx},
                             {"H", H},
                             {"P", P},
                             {"seed", config.seed},
                             {"max_R_sampled", max_R_sampled(rx, H, P, config.seed)},
                             {"T", compute_T(rx, H, P).exact}});
        }
        counts["max_R_sampled"] = max_r;
        doc["counts"] = counts;
    }

    {
        json hyp = json::array();
        bool all = true;
        for (int k = 1; k <= 3; ++k) {
            CurveSpec curve;
            curve.k = k;
            const HypothesisReport h = check_hypotheses(curve);
            all = all && h.ok;
            hyp.push_back({{"k", k}, {"ok", h.ok}, {"grid_points", h.grid_points}, {"violation", h.first_violation}});
        }
        doc["hypotheses"] = hyp;
        check("curve_hypotheses", all);
    }

    {
        json fits = json::array();
        json stability = json::array();
        bool finite = true;
        for (auto* fn : {&fit_close_points, &fit_fifth_derivative, &fit_case1a}) {
            const BoundFit coarse = fn(1, config.threads);
            const BoundFit fine = fn(2, config.threads);
            for (const auto* f : {&coarse, &fine})
                for (const auto& r : f->rows) finite = finite && std::isfinite(r.fitted_constant) && r.bound_value > 0;
            stability.push_back({{"name", coarse.name},
                                 {"max_fitted_coarse", coarse.max_fitted},
                                 {"max_fitted_fine", fine.max_fitted},
                                 {"relative_change", std::abs(fine.max_fitted - coarse.max_fitted) / coarse.max_fitted}});
            fits.push_back(fit_to_json(coarse));
            fits.push_back(fit_to_json(fine));
        }
        doc["bound_fits"] = fits;
        doc["bound_fit_stability"] = stability;
        check("bound_fits_finite", finite);
    }

    {
        json tables = json::array();
        bool covered = true;
        std::string detail;
        for (double rx : {1e8, 1e10})
            for (double g : {3.0, 3.5, 3.7, 3.74}) {
                const RegimeTable t = regime_table(rx, g);
                if (!t.all_covered) {
                    covered = false;
                    detail += "gap at gamma=" + gamma_text(g) + " x=" + format_double(rx) + "; ";
                }
                tables.push_back(regime_to_json(t));
            }
        const RegimeTable beyond = regime_table(1e17, 3.76);
        tables.push_back(regime_to_json(beyond));
        doc["regimes"] = tables;
        check("regime_coverage", covered, detail);
        check("regime_window_beyond_limit", !beyond.all_covered, "gamma=3.76 x=1e17");
    }

    json checks = json::array();
    for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    doc["checks"] = checks;
    doc["ok"] = result.ok();
    return result;
}

namespace {

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const bool as_json = c.format == Format::json;
    switch (c.command) {
        case Command::sieve: {
            const auto length = static_cast<uint32_t>(c.x - c.x_lo + 1);
            const SegmentBitmap bits = sieve_segment(c.x_lo, length);
            if (!c.output_path.empty()) {
                std::ofstream f(c.output_path, std::ios::binary);
                if (!f) throw UsageError("cannot open " + c.output_path);
                bits.write(f);
                if (!f) throw std::runtime_error("write failed: " + c.output_path);
            }
            if (as_json)
                out << to_json_text({{"base", c.x_lo}, {"length", length}, {"squarefree_count", bits.count()}});
            else
                out << "base,length,squarefree_count\n" << c.x_lo << ',' << length << ',' << bits.count() << '\n';
            return 0;
        }
        case Command::gaps: {
            if (as_json) {
                json rows = json::array();
                for_each_gap(c.x_lo, c.x, sieve_options(c), [&](std::span<const GapRecord> batch) {
                    for (const auto& g : batch) rows.push_back({{"prev", g.prev}, {"next", g.next}, {"gap", g.gap}});
                });
                out << to_json_text(rows);
            } else {
                out << "prev,next,gap\n";
                for_each_gap(c.x_lo, c.x, sieve_options(c), [&](std::span<const GapRecord> batch) {
                    for (const auto& g : batch) out << g.prev << ',' << g.next << ',' << g.gap << '\n';
                });
            }
            return 0;
        }
        case Command::moments: {
            const GapSummary s = summarize_gaps(c.x, c.gamma, sieve_options(c));
            const double xd = static_cast<double>(c.x);
            json rows = json::array();
            for (size_t i = 0; i < c.gamma.size(); ++i) {
                const double full = s.full_moments[i].sum();
                const double half = s.half_moments[i].sum();
                rows.push_back({{"gamma", c.gamma[i]},
                                {"x", c.x},
                                {"moment_sum", full},
                                {"moment_over_x", full / xd},
                                {"half_range_moment", half},
                                {"half_over_x", half / xd}});
            }
            if (as_json) {
                out << to_json_text(rows);
            } else {
                out << "gamma,x,moment_sum,moment_over_x,half_range_moment,half_over_x\n";
                for (const auto& r : rows)
                    out << format_double(r["gamma"].get<double>()) << ',' << c.x << ',' << format_double(r["moment_sum"].get<double>()) << ','
                        << format_double(r["moment_over_x"].get<double>()) << ',' << format_double(r["half_range_moment"].get<double>()) << ','
                        << format_double(r["half_over_x"].get<double>()) << '\n';
            }
            return 0;
        }
        case Command::mirsky: {
            const std::vector<double> none;
            const GapSummary s = summarize_gaps(c.x, none, sieve_options(c));
            if (as_json) {
                json rows = json::array();
                for (const auto& [h, n] : s.full.counts)
                    rows.push_back({{"h", h}, {"count", n}, {"alpha_hat", alpha_estimate(s.full, h)}});
                out << to_json_text(rows);
            } else {
                out << "h,count,alpha_hat\n";
                for (const auto& [h, n] : s.full.counts)
                    out << h << ',' << n << ',' << format_double(alpha_estimate(s.full, h)) << '\n';
            }
            return 0;
        }
        case Command::counts: {
            const double g = max_gamma(c);
            const double lh = std::log(static_cast<double>(c.H));
            const double D = std::max(1.0, 512 * std::pow(g * lh, 1.5));
            struct Row {
                std::string quantity;
                CountReport r;
            };
            std::vector<Row> rows;
            rows.push_back({"T", compute_T(c.x, c.H, c.P)});
            const SextupleCount sc = count_S({c.x, c.H, c.P, D, 2 * D * D}, g);
            rows.push_back({"S", sc.report});
            rows.push_back({"S_distinct_primes", CountReport::make(sc.distinct_primes, sc.report.bound_value)});
            rows.push_back({"case1a", count_case1a(c.H, c.K, c.L, c.P, c.x)});
            rows.push_back({"two_dim", CountReport{count_2dim(c.H, c.K, c.L, c.P, c.x, 1), 0.0, 0.0}});
            if (as_json) {
                json arr = json::array();
                for (const auto& r : rows) {
                    json j = {{"quantity", r.quantity}, {"x", c.x}, {"H", c.H}, {"P", c.P}, {"K", c.K}, {"L", c.L}};
                    j.update(to_json(r.r));
                    arr.push_back(std::move(j));
                }
                out << to_json_text(arr);
            } else {
                out << "quantity,x,H,P,K,L,exact,bound_value,fitted_constant\n";
                for (const auto& r : rows)
                    out << r.quantity << ',' << c.x << ',' << c.H << ',' << c.P << ',' << c.K << ',' << c.L << ','
                        << r.r.exact << ',' << format_double(r.r.bound_value) << ','
                        << format_double(r.r.fitted_constant) << '\n';
            }
            return 0;
        }
        case Command::rpoints: {
            ClosePointQuery q;
            q.curve.k = c.curve_k;
            q.M = c.M;
            q.Q = c.Q;
            q.delta = c.delta;
            const CountReport r = count_close_points(q);
            if (as_json) {
                json j = {{"k", c.curve_k}, {"M", c.M}, {"Q", c.Q}, {"delta", c.delta}, {"Delta", q.Delta()}};
                j.update(to_json(r));
                out << to_json_text(j);
            } else {
                out << "k,M,Q,delta,Delta,exact,bound_value,fitted_constant\n"
                    << c.curve_k << ',' << c.M << ',' << c.Q << ',' << format_double(c.delta) << ','
                    << format_double(q.Delta()) << ',' << r.exact << ',' << format_double(r.bound_value) << ','
                    << format_double(r.fitted_constant) << '\n';
            }
            return 0;
        }
        case Command::fractional: {
            const FractionalReport r = count_R({c.x, c.M, c.delta});
            if (as_json) {
                json j = {{"n", c.x}, {"M", c.M}, {"delta", c.delta}};
                j.update(to_json(r.report));
                j["lambda5"] = {r.lambda5_lo, r.lambda5_hi};
                j["lambda4"] = {r.lambda4_lo, r.lambda4_hi};
                out << to_json_text(j);
            } else {
                out << "n,M,delta,exact,bound_value,fitted_constant,lambda5_lo,lambda5_hi,lambda4_lo,lambda4_hi\n"
                    << c.x << ',' << c.M << ',' << format_double(c.delta) << ',' << r.report.exact << ','
                    << format_double(r.report.bound_value) << ',' << format_double(r.report.fitted_constant) << ','
                    << format_double(r.lambda5_lo) << ',' << format_double(r.lambda5_hi) << ','
                    << format_double(r.lambda4_lo) << ',' << format_double(r.lambda4_hi) << '\n';
            }
            return 0;
        }
        case Command::regimes: {
            json tables = json::array();
            if (!as_json) out << "gamma,H,P0,P1,covered_by\n";
            for (double g : c.gamma) {
                const RegimeTable t = regime_table(static_cast<double>(c.x), g);
                std::vector<std::string> uncovered;
                for (const auto& r : t.rows) {
                    if (!r.covered) uncovered.push_back(format_double(r.H));
                    if (!as_json)
                        out << format_double(g) << ',' << format_double(r.H) << ',' << format_double(r.P0) << ','
                            << format_double(r.P1) << ',' << join(r.covered_by, "|") << '\n';
                }
                err << "gamma=" << gamma_text(g) << ": "
                    << (t.all_covered ? "all H covered" : "uncovered H: " + join(uncovered, " ")) << '\n';
                tables.push_back(regime_to_json(t));
            }
            if (as_json) out << to_json_text(tables);
            return 0;
        }
        case Command::report: {
            const ReportResult r = build_report(c);
            const std::string text = to_json_text(r.document);
            if (c.output_path.empty()) {
                out << text;
            } else {
                std::ofstream f(c.output_path, std::ios::binary);
                if (!f) throw UsageError("cannot open " + c.output_path);
                f << text;
                if (!f) throw std::runtime_error("write failed: " + c.output_path);
            }
            int status = 0;
            for (const auto& chk : r.checks)
                if (!chk.pass) {
                    err << "check failed: " << chk.name << (chk.detail.empty() ? "" : " (" + chk.detail + ")") << '\n';
                    status = 1;
                }
            return status;
        }
    }
    return 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        return run_command(config, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace sqg
