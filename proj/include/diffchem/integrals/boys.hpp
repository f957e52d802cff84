// Copyright 2026 The diffchem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "diffchem/autodiff/dual.hpp"
#include "diffchem/error.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace diffchem::integrals {

/// Below this argument the series + downward recursion branch is used; above
/// it, the closed erf form for F_0 and upward recursion.
inline constexpr double kBoysSwitch = 25.0;

/**
 * F_0(x) .. F_nmax(x) of the Boys function
 *   F_n(x) = \int_0^1 t^{2n} exp(-x t^2) dt.
 */
inline std::vector<double> boys_array(int nmax, double x) {
    if (!(x >= 0.0)) {
        fail(ErrorKind::Domain, "Boys function argument must be non-negative");
    }
    std::vector<double> f(static_cast<std::size_t>(nmax) + 1);
    const double ex = std::exp(-x);
    if (x < kBoysSwitch) {
        // e^{-x} sum_k (2x)^k / ((2n+1)(2n+3)...(2n+2k+1))
        double term = 1.0 / (2 * nmax + 1);
        double sum = term;
        for (int k = 1; k < 400; ++k) {
            term *= 2.0 * x / (2 * nmax + 2 * k + 1);
            sum += term;
            if (term < 1e-17 * sum) {
                break;
            }
        }
        f[nmax] = ex * sum;
        for (int n = nmax - 1; n >= 0; --n) {
            f[n] = (2.0 * x * f[n + 1] + ex) / (2 * n + 1);
        }
    } else {
        f[0] = 0.5 * std::sqrt(std::numbers::pi / x) * std::erf(std::sqrt(x));
        for (int n = 0; n < nmax; ++n) {
            f[n + 1] = ((2 * n + 1) * f[n] - ex) / (2.0 * x);
        }
    }
    return f;
}

/// Dual overload: dF_n/dx = -F_{n+1}, applied recursively through nesting.
template <class T, std::size_t N>
std::vector<ad::Dual<T, N>> boys_array(int nmax, const ad::Dual<T, N> &x) {
    const auto inner = boys_array(nmax + 1, x.value());
    std::vector<ad::Dual<T, N>> f;
    f.reserve(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) {
        f.push_back(ad::Dual<T, N>::chain(inner[n], -inner[n + 1], x));
    }
    return f;
}

inline double boys(int n, double x) { return boys_array(n, x)[n]; }

template <class T, std::size_t N> ad::Dual<T, N> boys(int n, const ad::Dual<T, N> &x) {
    return boys_array(n, x)[n];
}

} // namespace diffchem::integrals
