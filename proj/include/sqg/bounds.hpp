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

// Right-hand sides of the upper bounds the counters are fitted against.
// Every log is natural.

#pragma once

#include <cstdint>

namespace sqg {

// Result of one counting experiment. fitted_constant = exact / bound_value,
// the empirical stand-in for the implied constant of an O(.) bound. A
// degenerate (non-positive) bound gives fitted_constant = 0.
struct CountReport {
    uint64_t exact = 0;
    double bound_value = 0.0;
    double fitted_constant = 0.0;

    static CountReport make(uint64_t exact, double bound_value) {
        return {exact, bound_value, bound_value > 0.0 ? static_cast<double>(exact) / bound_value : 0.0};
    }
};

namespace bounds {

// x^{1/15} P^{8/15} + H^{1/6} P^{2/3} + H^{1/4} P / x^{1/4}
double fifth_derivative(double x, double H, double P);

// x / (H^{gamma-3} log^6 H)
double sextuple(double x, double H, double gamma);

// H^2 log x / (K L)^2 + x log x / (K L P^{4/3}) + H^{1/3} x log x / ((K L)^{4/3} P^{4/3})
double case1a(double H, double K, double L, double P, double x);

// ((M Q)^{2/3} + delta^{1/3} (M Q)^{4/3}) log(M Q)
double close_points(double M, double Q, double delta);

// General-d close point bound with the (M T)^eps factor evaluated at eps:
//   (((1 + Delta^{1/d} M^2) M^{2d} T)^{1/(2d+1)} + Delta^{1/(2d+1)} M^2) (M T)^eps
//   + (Delta^{d^2+2d-1} T^{d(d-1)})^{1/(d(d+1)(2d-1))} M^2
double close_points_general(unsigned d, double M, double T, double Delta, double eps);

}  // namespace bounds
}  // namespace sqg
