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

#include "diffchem/integrals/boys.hpp"

#include <cstddef>
#include <vector>

namespace diffchem::integrals {

/**
 * McMurchie-Davidson expansion coefficients E^{ij}_t of a 1-D Gaussian product
 * (x-A)^i (x-B)^j exp(-a(x-A)^2 - b(x-B)^2) in Hermite Gaussians centered at
 * P = (aA + bB)/(a + b). Holds every (i, j, t) with i <= imax, j <= jmax.
 */
template <class T> class HermiteTable {
  public:
    HermiteTable(int imax, int jmax, const T &a, const T &b, const T &ax, const T &bx)
        : imax_(imax), jmax_(jmax), tdim_(imax + jmax + 1),
          data_(static_cast<std::size_t>((imax + 1) * (jmax + 1) * (imax + jmax + 1)), T(0)) {
        using std::exp;
        const T p = a + b;
        const T mu = a * b / p;
        const T xab = ax - bx;
        const T xpa = -(b / p) * xab;
        const T xpb = (a / p) * xab;
        const T half_inv_p = T(0.5) / p;
        at(0, 0, 0) = exp(-(mu * xab * xab));
        for (int i = 0; i < imax; ++i) {
            for (int t = 0; t <= i + 1; ++t) {
                T v = xpa * get(i, 0, t);
                if (t > 0) {
                    v += half_inv_p * get(i, 0, t - 1);
                }
                v += T(double(t + 1)) * get(i, 0, t + 1);
                at(i + 1, 0, t) = v;
            }
        }
        for (int i = 0; i <= imax; ++i) {
            for (int j = 0; j < jmax; ++j) {
                for (int t = 0; t <= i + j + 1; ++t) {
                    T v = xpb * get(i, j, t);
                    if (t > 0) {
                        v += half_inv_p * get(i, j, t - 1);
                    }
                    v += T(double(t + 1)) * get(i, j, t + 1);
                    at(i, j + 1, t) = v;
                }
            }
        }
    }

    /// E^{ij}_t, zero outside 0 <= t <= i + j.
    [[nodiscard]] T get(int i, int j, int t) const {
        if (i < 0 || j < 0 || t < 0 || t > i + j || i > imax_ || j > jmax_) {
            return T(0);
        }
        return data_[index(i, j, t)];
    }

  private:
    T &at(int i, int j, int t) { return data_[index(i, j, t)]; }
    [[nodiscard]] std::size_t index(int i, int j, int t) const {
        return static_cast<std::size_t>((i * (jmax_ + 1) + j) * tdim_ + t);
    }

    int imax_;
    int jmax_;
    int tdim_;
    std::vector<T> data_;
};

/// E^{l1 l2}_t for t = 0 .. l1 + l2 (all higher t vanish).
template <class T>
std::vector<T> hermite_coefficients(int l1, int l2, const T &a, const T &b, const T &ax,
                                    const T &bx) {
    const HermiteTable<T> table(l1, l2, a, b, ax, bx);
    std::vector<T> out;
    for (int t = 0; t <= l1 + l2; ++t) {
        out.push_back(table.get(l1, l2, t));
    }
    return out;
}

/**
 * Hermite Coulomb integrals R_{tuv}(p, PC) for t <= tmax, u <= umax, v <= vmax
 * (order n = 0), from R^n_{000} = (-2p)^n F_n(p |PC|^2).
 */
template <class T> class HermiteCoulomb {
  public:
    HermiteCoulomb(int tmax, int umax, int vmax, const T &p, const T &x, const T &y,
                   const T &z)
        : tmax_(tmax), umax_(umax), vmax_(vmax), lmax_(tmax + umax + vmax) {
        const T r2 = x * x + y * y + z * z;
        const auto f = boys_array(lmax_, p * r2);
        const std::size_t nn = static_cast<std::size_t>(lmax_ + 1);
        data_.assign(nn * (tmax + 1) * (umax + 1) * (vmax + 1), T(0));
        T scale(1.0);
        for (int n = 0; n <= lmax_; ++n) {
            at(n, 0, 0, 0) = scale * f[n];
            scale = scale * (T(-2.0) * p);
        }
        for (int total = 1; total <= lmax_; ++total) {
            for (int t = 0; t <= std::min(total, tmax); ++t) {
                for (int u = 0; u <= std::min(total - t, umax); ++u) {
                    const int v = total - t - u;
                    if (v > vmax) {
                        continue;
                    }
                    for (int n = 0; n <= lmax_ - total; ++n) {
                        T r(0);
                        if (t > 0) {
                            r = x * at(n + 1, t - 1, u, v);
                            if (t > 1) {
                                r += T(double(t - 1)) * at(n + 1, t - 2, u, v);
                            }
                        } else if (u > 0) {
                            r = y * at(n + 1, t, u - 1, v);
                            if (u > 1) {
                                r += T(double(u - 1)) * at(n + 1, t, u - 2, v);
                            }
                        } else {
                            r = z * at(n + 1, t, u, v - 1);
                            if (v > 1) {
                                r += T(double(v - 1)) * at(n + 1, t, u, v - 2);
                            }
                        }
                        at(n, t, u, v) = r;
                    }
                }
            }
        }
    }

    [[nodiscard]] const T &operator()(int t, int u, int v) const {
        return data_[index(0, t, u, v)];
    }

  private:
    T &at(int n, int t, int u, int v) { return data_[index(n, t, u, v)]; }
    [[nodiscard]] std::size_t index(int n, int t, int u, int v) const {
        return static_cast<std::size_t>(((n * (tmax_ + 1) + t) * (umax_ + 1) + u) * (vmax_ + 1) +
                                        v);
    }

    int tmax_;
    int umax_;
    int vmax_;
    int lmax_;
    std::vector<T> data_;
};

} // namespace diffchem::integrals
