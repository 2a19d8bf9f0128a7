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

// Orchestration behind the sqg command line: one RunConfig per invocation,
// dispatched to the library and rendered as CSV or JSON.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sqg {

enum class Command { sieve, gaps, moments, mirsky, counts, rpoints, fractional, regimes, report };
enum class Format { csv, json };

Command parse_command(const std::string& name);
std::string to_string(Command c);

// Bad flags or flag combinations; the CLI maps it to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::report;
    uint64_t x = 10'000'000;
    uint64_t x_lo = 1;
    std::vector<double> gamma{0, 1, 2, 3, 3.5};
    uint32_t segment_size = 1u << 16;
    unsigned threads = 1;
    std::string output_path;  // empty: standard output
    Format format = Format::csv;
    uint64_t seed = 20260101;

    uint64_t H = 64;
    uint64_t P = 64;
    uint64_t K = 1;
    uint64_t L = 1;
    double delta = 0.1;
    uint64_t M = 16;
    uint64_t Q = 16;
    int curve_k = 1;

    // Throws UsageError.
    void validate() const;
};

// Serializes with two-space indentation and every double printed to 17
// significant digits. Non-finite doubles become null.
std::string to_json_text(const nlohmann::ordered_json& doc);

// Parses "10000000", "1e7" or "2^20" into an exact unsigned integer.
uint64_t parse_count(const std::string& text);

// "0,1,2.5" -> {0, 1, 2.5}
std::vector<double> parse_gamma_list(const std::string& text);

struct FitRow {
    std::vector<std::pair<std::string, double>> params;
    uint64_t exact = 0;
    double bound_value = 0.0;
    double fitted_constant = 0.0;
};

// Max of exact / bound over a parameter grid. Resolution r places r grid
// points per doubling between fixed endpoints, so r = 2 refines r = 1.
struct BoundFit {
    std::string name;
    unsigned resolution = 1;
    std::vector<FitRow> rows;
    double max_fitted = 0.0;
};

// Fifth-derivative bound against compute_T: x in {1e6, 1e7}, 4 <= H <= x^{1/5} log x,
// P0(H) <= P <= min(P1(H), sqrt(x)).
BoundFit fit_fifth_derivative(unsigned resolution, unsigned threads);

// Close-point bound against count_close_points: k in {1, 2, 3},
// 4 <= M <= Q <= 128, Delta = delta Q^2 in [1/16, 1/4].
BoundFit fit_close_points(unsigned resolution, unsigned threads);

// Case 1(a) bound against count_case1a: x in {1e5, 1e6}, K = L in {1, 2},
// 4 <= P <= 32, 4 <= H <= 64.
BoundFit fit_case1a(unsigned resolution, unsigned threads);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReportResult {
    nlohmann::ordered_json document;
    std::vector<CheckResult> checks;
    bool ok() const;
};

// The consolidated report: sieve and moment statistics at config.x, parameter
// tuples, every counting experiment, bound fits at two resolutions and the
// regime tables, followed by the hard checks.
ReportResult build_report(const RunConfig& config);

// Runs one command. Returns the process exit status: 0 on success, 1 when a
// hard check fails, 2 on a usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sqg
