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

#include "diffchem/linalg/matrix.hpp"

#include <numeric>

namespace diffchem::linalg {

template <class T> struct EigenDecomposition {
    std::vector<T> values;  ///< ascending
    Matrix<T> vectors;      ///< eigenvectors in columns
    bool degenerate = false; ///< some adjacent gap below kDegeneracyGap
};

inline constexpr double kDegeneracyGap = 1e-10;

namespace detail {

/// Applies the rotation that zeroes a(p, q). Returns false when the pair is
/// skipped (already zero, or a degenerate diagonal with vanishing coupling).
template <class T>
bool jacobi_rotate(Matrix<T> &a, Matrix<T> &v, std::size_t p, std::size_t q,
                   double scale) {
    using std::atan2;
    using std::cos;
    using std::sin;
    if (ad::is_zero(a(p, q))) {
        return false;
    }
    const T d = a(q, q) - a(p, p);
    if (ad::primal(a(p, q)) == 0.0 && std::abs(ad::primal(d)) <= 1e-14 * scale) {
        return false;
    }
    // Smallest rotation angle: |phi| <= pi/4.
    const T phi = ad::primal(d) >= 0.0 ? T(0.5) * atan2(T(2.0) * a(p, q), d)
                                       : T(0.5) * atan2(T(-2.0) * a(p, q), -d);
    const T c = cos(phi);
    const T s = sin(phi);
    const std::size_t n = a.rows();
    const T app = a(p, p);
    const T aqq = a(q, q);
    const T apq = a(p, q);
    const T cs2 = T(2.0) * c * s * apq;
    a(p, p) = c * c * app - cs2 + s * s * aqq;
    a(q, q) = s * s * app + cs2 + c * c * aqq;
    a(p, q) = T(0);
    a(q, p) = T(0);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) {
            continue;
        }
        const T akp = a(k, p);
        const T akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(p, k) = a(k, p);
        a(k, q) = s * akp + c * akq;
        a(q, k) = a(k, q);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const T vkp = v(k, p);
        const T vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
    return true;
}

} // namespace detail

/**
 * Symmetric eigendecomposition by cyclic Jacobi rotations.
 *
 * Works for any scalar supporting atan2/sin/cos, so dual-number tangents flow
 * through. Once the primal off-diagonal mass has converged, two extra sweeps
 * zero the tangent parts of the off-diagonal entries. Eigenvalues come out
 * ascending; each eigenvector is signed so its largest-magnitude component is
 * positive (ties go to the lowest index).
 */
template <class T> EigenDecomposition<T> symmetric_eigen(Matrix<T> a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) {
        fail(ErrorKind::InternalConsistency, "symmetric_eigen needs a square matrix");
    }
    Matrix<T> v = Matrix<T>::identity(n);

    double scale = 0.0;
    for (const auto &x : a.data()) {
        scale = std::max(scale, std::abs(ad::primal(x)));
    }
    if (scale == 0.0) {
        scale = 1.0;
    }

    constexpr int kMaxSweeps = 100;
    constexpr int kPolishSweeps = 2;
    int polish_left = -1;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(ad::primal(a(p, q))));
            }
        }
        if (polish_left < 0 && off <= 1e-15 * scale) {
            polish_left = kPolishSweeps;
        }
        if (polish_left == 0) {
            break;
        }
        if (polish_left > 0) {
            --polish_left;
        }
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotated |= detail::jacobi_rotate(a, v, p, q, scale);
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return ad::primal(a(i, i)) < ad::primal(a(j, j));
    });

    EigenDecomposition<T> out;
    out.values.reserve(n);
    out.vectors = Matrix<T>(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.values.push_back(a(src, src));
        std::size_t lead = 0;
        double lead_abs = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double m = std::abs(ad::primal(v(k, src)));
            if (m > lead_abs * (1.0 + 1e-12)) {
                lead_abs = m;
                lead = k;
            }
        }
        const bool flip = ad::primal(v(lead, src)) < 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, col) = flip ? -v(k, src) : v(k, src);
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (ad::primal(out.values[i]) - ad::primal(out.values[i - 1]) <
            kDegeneracyGap) {
            out.degenerate = true;
        }
    }
    return out;
}

} // namespace diffchem::linalg
