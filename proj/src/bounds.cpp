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

#include "sqg/bounds.hpp"

#include <cmath>

namespace sqg::bounds {

double fifth_derivative(double x, double H, double P) {
    return std::pow(x, 1.0 / 15) * std::pow(P, 8.0 / 15) + std::pow(H, 1.0 / 6) * std::pow(P, 2.0 / 3) +
           std::pow(H, 0.25) * P / std::pow(x, 0.25);
}

double sextuple(double x, double H, double gamma) {
    return x / (std::pow(H, gamma - 3) * std::pow(std::log(H), 6));
}

double case1a(double H, double K, double L, double P, double x) {
    const double KL = K * L;
    const double lx = std::log(x);
    const double p43 = std::pow(P, 4.0 / 3);
    return H * H * lx / (KL * KL) + x * lx / (KL * p43) + std::cbrt(H) * x * lx / (std::pow(KL, 4.0 / 3) * p43);
}

double close_points(double M, double Q, double delta) {
    const double mq = M * Q;
    return (std::pow(mq, 2.0 / 3) + std::cbrt(delta) * std::pow(mq, 4.0 / 3)) * std::log(mq);
}

double close_points_general(unsigned d, double M, double T, double Delta, double eps) {
    const double dd = d;
    const double first = std::pow((1 + std::pow(Delta, 1 / dd) * M * M) * std::pow(M, 2 * dd) * T, 1 / (2 * dd + 1));
    const double second = std::pow(Delta, 1 / (2 * dd + 1)) * M * M;
    const double last = std::pow(std::pow(Delta, dd * dd + 2 * dd - 1) * std::pow(T, dd * (dd - 1)),
                                 1 / (dd * (dd + 1) * (2 * dd - 1))) *
                        M * M;
    return (first + second) * std::pow(M * T, eps) + last;
}

}  // namespace sqg::bounds
