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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "sqg/report.hpp"

namespace {

struct Subcommand {
    const char* name;
    const char* help;
};

constexpr Subcommand kSubcommands[] = {
    {"sieve", "Sieve [x-lo, x]. Writes the bitmap dump to --out; prints base,length,squarefree_count."},
    {"gaps", "Gaps with x-lo < next <= x. Columns: prev,next,gap."},
    {"moments",
     "Gap moments per gamma. Columns: gamma,x,moment_sum,moment_over_x,half_range_moment,half_over_x."},
    {"mirsky", "Gap histogram up to x. Columns: h,count,alpha_hat."},
    {"counts",
     "T, S, Case 1(a) and two-dimensional counts at (x, H, P, K, L); S uses the largest gamma.\n"
     "Columns: quantity,x,H,P,K,L,exact,bound_value,fitted_constant."},
    {"rpoints", "Close rational points near sqrt(k + u). Columns: k,M,Q,delta,Delta,exact,bound_value,fitted_constant."},
    {"fractional",
     "m in [M, 2M] with ||x/m^2|| <= delta. Columns: "
     "n,M,delta,exact,bound_value,fitted_constant,lambda5_lo,lambda5_hi,lambda4_lo,lambda4_hi."},
    {"regimes", "Regime table per gamma at x. Columns: gamma,H,P0,P1,covered_by. Verdict on stderr."},
    {"report", "Full experiment grid as one JSON document; exit 1 if a hard check fails."},
};

}  // namespace

int main(int argc, char** argv) {
    sqg::RunConfig config;
    std::string x = "1e7", x_lo = "1", gamma = "0,1,2,3,3.5", segment_size = "65536", seed;
    std::string H = "64", P = "64", K = "1", L = "1", M = "16", Q = "16";
    std::string format = "csv";

    CLI::App app{"Squarefree gap statistics and counting experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--x", x, "Upper limit x; accepts 1e7 or 2^20")->envname("SQG_X");
    app.add_option("--x-lo", x_lo, "Lower limit for sieve and gaps")->envname("SQG_X_LO");
    app.add_option("--gamma", gamma, "Comma-separated gamma list")->envname("SQG_GAMMA");
    app.add_option("--H", H, "Window length H")->envname("SQG_H");
    app.add_option("--P", P, "Prime block start P")->envname("SQG_P");
    app.add_option("--K", K, "Dyadic K")->envname("SQG_K");
    app.add_option("--L", L, "Dyadic L")->envname("SQG_L");
    app.add_option("--delta", config.delta, "delta for rpoints and fractional")->envname("SQG_DELTA");
    app.add_option("--M", M, "M for rpoints and fractional")->envname("SQG_M");
    app.add_option("--Q", Q, "Q for rpoints")->envname("SQG_Q");
    app.add_option("--curve-k", config.curve_k, "Curve sqrt(k + u), k in {1, 2, 3}")->envname("SQG_CURVE_K");
    app.add_option("--segment-size", segment_size, "Sieve segment length, power of two >= 64")
        ->envname("SQG_SEGMENT_SIZE");
    app.add_option("--threads", config.threads, "Worker threads")->envname("SQG_THREADS");
    app.add_option("--seed", seed, "Seed for sampled n")->envname("SQG_SEED");
    app.add_option("--format", format, "csv or json")->envname("SQG_FORMAT")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", config.output_path, "Output path")->envname("SQG_OUT");

    std::map<std::string, CLI::App*> subs;
    for (const auto& s : kSubcommands) subs[s.name] = app.add_subcommand(s.name, s.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) config.command = sqg::parse_command(name);
        config.x = sqg::parse_count(x);
        config.x_lo = sqg::parse_count(x_lo);
        config.gamma = sqg::parse_gamma_list(gamma);
        const uint64_t seg = sqg::parse_count(segment_size);
        if (seg > UINT32_MAX) throw sqg::UsageError("--segment-size too large");
        config.segment_size = static_cast<uint32_t>(seg);
        if (!seed.empty()) config.seed = sqg::parse_count(seed);
        config.H = sqg::parse_count(H);
        config.P = sqg::parse_count(P);
        config.K = sqg::parse_count(K);
        config.L = sqg::parse_count(L);
        config.M = sqg::parse_count(M);
        config.Q = sqg::parse_count(Q);
        config.format = format == "json" ? sqg::Format::json : sqg::Format::csv;
    } catch (const sqg::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    return sqg::run(config, std::cout, std::cerr);
}
