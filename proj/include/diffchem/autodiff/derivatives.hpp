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

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace diffchem::ad {

/// Number of tangent slots evaluated per pass (first-order drivers).
inline constexpr std::size_t kChunk = 8;
/// Slots per nesting level for the forward-over-forward Hessian driver.
inline constexpr std::size_t kHessianChunk = 4;

using Grad = Dual<double, kChunk>;
using HessianScalar = Dual<Dual<double, kHessianChunk>, kHessianChunk>;

enum class DiffMode { Gradient, Jacobian, Hessian };

struct DiffConfig {
    std::size_t n_directions = 1;
    DiffMode mode = DiffMode::Gradient;

    void validate() const {
        if (n_directions < 1) {
            fail(ErrorKind::Input, "DiffConfig requires n_directions >= 1");
        }
    }
};

/// Row-major dense result of a Jacobian or Hessian evaluation.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * c, 0.0) {}

    double &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const {
        return data[i * cols + j];
    }
};

namespace detail {

inline void check_finite(double v, const char *what) {
    if (!std::isfinite(v)) {
        throw PropagationError(std::string(what) + " evaluated to a non-finite value",
                               v);
    }
}

template <class D>
std::vector<D> seed_chunk(std::span<const double> x0, std::size_t begin) {
    std::vector<D> x;
    x.reserve(x0.size());
    for (std::size_t k = 0; k < x0.size(); ++k) {
        if (k >= begin && k < begin + D::directions) {
            x.push_back(D::variable(x0[k], k - begin));
        } else {
            x.emplace_back(x0[k]);
        }
    }
    return x;
}

} // namespace detail

/// Value of a generic scalar function at a plain double point.
template <class F> double value(F &&f, std::span<const double> x0) {
    const std::vector<double> x(x0.begin(), x0.end());
    const double v = f(x);
    detail::check_finite(v, "function");
    return v;
}

/**
 * Gradient of `f` at `x0` in forward mode. `f` must be callable with
 * `const std::vector<Grad>&` and return `Grad`; the argument is processed in
 * chunks of kChunk directions.
 */
template <class F>
std::vector<double> grad(F &&f, std::span<const double> x0) {
    std::vector<double> g(x0.size(), 0.0);
    for (std::size_t begin = 0; begin < x0.size(); begin += kChunk) {
        const auto x = detail::seed_chunk<Grad>(x0, begin);
        const Grad r = f(x);
        detail::check_finite(r.value(), "function");
        const std::size_t width = std::min(kChunk, x0.size() - begin);
        for (std::size_t s = 0; s < width; ++s) {
            detail::check_finite(r.tangent(s), "gradient component");
            g[begin + s] = r.tangent(s);
        }
    }
    return g;
}

/// Jacobian of a vector-valued `f`; rows index outputs, columns inputs.
template <class F>
DenseMatrix jacobian(F &&f, std::span<const double> x0) {
    DenseMatrix jac;
    for (std::size_t begin = 0; begin < std::max<std::size_t>(x0.size(), 1);
         begin += kChunk) {
        const auto x = detail::seed_chunk<Grad>(x0, begin);
        const std::vector<Grad> r = f(x);
        if (begin == 0) {
            jac = DenseMatrix(r.size(), x0.size());
        } else if (r.size() != jac.rows) {
            fail(ErrorKind::InternalConsistency,
                 "jacobian: output dimension changed between passes");
        }
        const std::size_t width =
            x0.empty() ? 0 : std::min(kChunk, x0.size() - begin);
        for (std::size_t i = 0; i < r.size(); ++i) {
            detail::check_finite(r[i].value(), "function component");
            for (std::size_t s = 0; s < width; ++s) {
                detail::check_finite(r[i].tangent(s), "jacobian entry");
                jac(i, begin + s) = r[i].tangent(s);
            }
        }
        if (x0.empty()) {
            break;
        }
    }
    return jac;
}

/**
 * Raw (unsymmetrized) Hessian by forward-over-forward nesting. The block for
 * direction chunks (A, B) comes from seeding A in the outer level and B in the
 * inner level.
 */
template <class F>
DenseMatrix hessian(F &&f, std::span<const double> x0) {
    using Inner = Dual<double, kHessianChunk>;
    using Outer = HessianScalar;
    const std::size_t n = x0.size();
    DenseMatrix h(n, n);
    for (std::size_t a0 = 0; a0 < n; a0 += kHessianChunk) {
        for (std::size_t b0 = 0; b0 < n; b0 += kHessianChunk) {
            std::vector<Outer> x;
            x.reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                Inner inner(x0[k]);
                if (k >= b0 && k < b0 + kHessianChunk) {
                    inner.tangent(k - b0) = 1.0;
                }
                Outer outer(inner);
                if (k >= a0 && k < a0 + kHessianChunk) {
                    outer.tangent(k - a0) = Inner(1.0);
                }
                x.push_back(outer);
            }
            const Outer r = f(x);
            detail::check_finite(primal(r), "function");
            for (std::size_t a = a0; a < std::min(n, a0 + kHessianChunk); ++a) {
                for (std::size_t b = b0; b < std::min(n, b0 + kHessianChunk);
                     ++b) {
                    const double v = r.tangent(a - a0).tangent(b - b0);
                    detail::check_finite(v, "hessian entry");
                    h(a, b) = v;
                }
            }
        }
    }
    return h;
}

/// Largest |H_ij - H_ji|.
inline double asymmetry(const DenseMatrix &m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = i + 1; j < m.cols; ++j) {
            worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
        }
    }
    return worst;
}

inline DenseMatrix symmetrized(const DenseMatrix &m) {
    DenseMatrix s = m;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            s(i, j) = 0.5 * (m(i, j) + m(j, i));
        }
    }
    return s;
}

/**
 * Directional derivatives of a scalar `f` along caller-supplied seed vectors
 * (`directions` is n_directions x len(x0), row-major). Returns one derivative
 * per direction.
 */
template <class F>
std::vector<double> directional(F &&f, std::span<const double> x0,
                                std::span<const double> directions,
                                const DiffConfig &config) {
    config.validate();
    if (directions.size() != config.n_directions * x0.size()) {
        fail(ErrorKind::Layout, "directional: seed matrix has wrong size");
    }
    std::vector<double> out(config.n_directions, 0.0);
    for (std::size_t d0 = 0; d0 < config.n_directions; d0 += kChunk) {
        std::vector<Grad> x;
        x.reserve(x0.size());
        for (std::size_t k = 0; k < x0.size(); ++k) {
            Grad v(x0[k]);
            for (std::size_t s = 0; s < kChunk && d0 + s < config.n_directions;
                 ++s) {
                v.tangent(s) = directions[(d0 + s) * x0.size() + k];
            }
            x.push_back(v);
        }
        const Grad r = f(x);
        for (std::size_t s = 0; s < kChunk && d0 + s < config.n_directions;
             ++s) {
            detail::check_finite(r.tangent(s), "directional derivative");
            out[d0 + s] = r.tangent(s);
        }
    }
    return out;
}

} // namespace diffchem::ad
