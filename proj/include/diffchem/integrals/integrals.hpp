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

#include "diffchem/integrals/hermite.hpp"
#include "diffchem/linalg/matrix.hpp"
#include "diffchem/molecule/molecule.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace diffchem::integrals {

using linalg::Matrix;

/**
 * Two-electron integrals (mu nu | eta gamma) in chemist ordering,
 *   \int chi_mu(1) chi_nu(1) r12^{-1} chi_eta(2) chi_gamma(2),
 * stored once per 8-fold symmetry class of real orbitals.
 */
template <class T> class RepulsionTensor {
  public:
    RepulsionTensor() = default;
    explicit RepulsionTensor(std::size_t n)
        : n_(n), data_(pair_index(pair_index(n - 1, n - 1), pair_index(n - 1, n - 1)) + 1, T(0)) {}

    [[nodiscard]] std::size_t dimension() const { return n_; }

    [[nodiscard]] const T &operator()(std::size_t i, std::size_t j, std::size_t k,
                                      std::size_t l) const {
        return data_[compound(i, j, k, l)];
    }
    T &operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data_[compound(i, j, k, l)];
    }

    [[nodiscard]] const std::vector<T> &storage() const { return data_; }

    /// Storage slot shared by every symmetry-equivalent index tuple.
    static std::size_t compound(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return pair_index(pair_index(i, j), pair_index(k, l));
    }

    /// Lexicographically smallest tuple among the 8 equivalent orderings.
    static std::array<std::size_t, 4> canonical(std::size_t i, std::size_t j, std::size_t k,
                                                std::size_t l) {
        const std::array<std::array<std::size_t, 4>, 8> all = {{{i, j, k, l},
                                                                 {j, i, k, l},
                                                                 {i, j, l, k},
                                                                 {j, i, l, k},
                                                                 {k, l, i, j},
                                                                 {l, k, i, j},
                                                                 {k, l, j, i},
                                                                 {l, k, j, i}}};
        auto best = all[0];
        for (const auto &t : all) {
            if (t < best) {
                best = t;
            }
        }
        return best;
    }

  private:
    static std::size_t pair_index(std::size_t a, std::size_t b) {
        return a >= b ? a * (a + 1) / 2 + b : b * (b + 1) / 2 + a;
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

template <class T> struct IntegralTables {
    Matrix<T> overlap;
    Matrix<T> kinetic;
    Matrix<T> attraction;
    RepulsionTensor<T> repulsion;
};

namespace detail {

/// Per primitive pair data reused across integral classes.
template <class T> struct PrimitivePair {
    T p;
    Vec3<T> center;
    T weight; ///< product of normalized contraction weights
    std::array<std::vector<T>, 3> e; ///< E^{l1 l2}_t per axis
};

template <class T>
std::vector<PrimitivePair<T>> primitive_pairs(const ContractedGaussian<T> &a,
                                              const ContractedGaussian<T> &b) {
    const auto wa = normalized_weights(a);
    const auto wb = normalized_weights(b);
    std::vector<PrimitivePair<T>> out;
    out.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            PrimitivePair<T> pp;
            const T &ea = a.exponents[i];
            const T &eb = b.exponents[j];
            pp.p = ea + eb;
            for (int k = 0; k < 3; ++k) {
                pp.center[k] = (ea * a.center[k] + eb * b.center[k]) / pp.p;
                pp.e[k] = hermite_coefficients(a.lmn[k], b.lmn[k], ea, eb, a.center[k],
                                               b.center[k]);
            }
            pp.weight = wa[i] * wb[j];
            out.push_back(std::move(pp));
        }
    }
    return out;
}

/// 1-D overlap S_{ij} = E^{ij}_0 sqrt(pi/p) from a table.
template <class T> T overlap_1d(const HermiteTable<T> &e, int i, int j, const T &p) {
    using std::sqrt;
    if (i < 0 || j < 0) {
        return T(0);
    }
    return e.get(i, j, 0) * sqrt(T(std::numbers::pi) / p);
}

} // namespace detail

/// Overlap of two normalized contracted Gaussians.
template <class T>
T overlap(const ContractedGaussian<T> &a, const ContractedGaussian<T> &b) {
    using std::pow;
    T s(0);
    for (const auto &pp : detail::primitive_pairs(a, b)) {
        s += pp.weight * pp.e[0][0] * pp.e[1][0] * pp.e[2][0] *
             pow(T(std::numbers::pi) / pp.p, 1.5);
    }
    return s;
}

/// Kinetic energy integral <a| -nabla^2/2 |b>.
template <class T>
T kinetic(const ContractedGaussian<T> &a, const ContractedGaussian<T> &b) {
    const auto wa = normalized_weights(a);
    const auto wb = normalized_weights(b);
    T total(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const T &ea = a.exponents[i];
            const T &eb = b.exponents[j];
            const T p = ea + eb;
            std::array<T, 3> s;
            std::array<T, 3> t;
            for (int k = 0; k < 3; ++k) {
                const int li = a.lmn[k];
                const int lj = b.lmn[k];
                const HermiteTable<T> e(li, lj + 2, ea, eb, a.center[k], b.center[k]);
                s[k] = detail::overlap_1d(e, li, lj, p);
                t[k] = T(-2.0) * eb * eb * detail::overlap_1d(e, li, lj + 2, p) +
                       eb * T(double(2 * lj + 1)) * s[k] -
                       T(0.5 * lj * (lj - 1)) * detail::overlap_1d(e, li, lj - 2, p);
            }
            total += wa[i] * wb[j] *
                     (t[0] * s[1] * s[2] + s[0] * t[1] * s[2] + s[0] * s[1] * t[2]);
        }
    }
    return total;
}

/// Nuclear attraction <a| -sum_C Z_C / |r - C| |b>.
template <class T>
T attraction(const ContractedGaussian<T> &a, const ContractedGaussian<T> &b,
             const std::vector<Nucleus<T>> &nuclei) {
    T total(0);
    const int tmax = a.lmn[0] + b.lmn[0];
    const int umax = a.lmn[1] + b.lmn[1];
    const int vmax = a.lmn[2] + b.lmn[2];
    for (const auto &pp : detail::primitive_pairs(a, b)) {
        const T pref = T(2.0 * std::numbers::pi) / pp.p;
        for (const auto &nuc : nuclei) {
            const HermiteCoulomb<T> r(tmax, umax, vmax, pp.p, pp.center[0] - nuc.position[0],
                                      pp.center[1] - nuc.position[1],
                                      pp.center[2] - nuc.position[2]);
            T sum(0);
            for (int t = 0; t <= tmax; ++t) {
                for (int u = 0; u <= umax; ++u) {
                    for (int v = 0; v <= vmax; ++v) {
                        sum += pp.e[0][t] * pp.e[1][u] * pp.e[2][v] * r(t, u, v);
                    }
                }
            }
            total -= T(double(nuc.charge)) * pp.weight * pref * sum;
        }
    }
    return total;
}

namespace detail {

template <class T>
T repulsion_from_pairs(const std::vector<PrimitivePair<T>> &ab, const AngularMomentum &lab,
                       const std::vector<PrimitivePair<T>> &cd, const AngularMomentum &lcd) {
    using std::sqrt;
    const double two_pi_52 = 2.0 * std::pow(std::numbers::pi, 2.5);
    T total(0);
    for (const auto &x : ab) {
        for (const auto &y : cd) {
            const T alpha = x.p * y.p / (x.p + y.p);
            const HermiteCoulomb<T> r(lab[0] + lcd[0], lab[1] + lcd[1], lab[2] + lcd[2], alpha,
                                      x.center[0] - y.center[0], x.center[1] - y.center[1],
                                      x.center[2] - y.center[2]);
            T sum(0);
            for (int t = 0; t <= lab[0]; ++t) {
                for (int u = 0; u <= lab[1]; ++u) {
                    for (int v = 0; v <= lab[2]; ++v) {
                        const T eab = x.e[0][t] * x.e[1][u] * x.e[2][v];
                        T inner(0);
                        for (int tau = 0; tau <= lcd[0]; ++tau) {
                            for (int nu = 0; nu <= lcd[1]; ++nu) {
                                for (int phi = 0; phi <= lcd[2]; ++phi) {
                                    const double sign = ((tau + nu + phi) % 2) ? -1.0 : 1.0;
                                    inner += sign * y.e[0][tau] * y.e[1][nu] * y.e[2][phi] *
                                             r(t + tau, u + nu, v + phi);
                                }
                            }
                        }
                        sum += eab * inner;
                    }
                }
            }
            total += x.weight * y.weight * T(two_pi_52) / (x.p * y.p * sqrt(x.p + y.p)) * sum;
        }
    }
    return total;
}

inline AngularMomentum pair_lmn(const AngularMomentum &a, const AngularMomentum &b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

} // namespace detail

/// A single electron repulsion integral (ab|cd), chemist ordering.
template <class T>
T repulsion(const ContractedGaussian<T> &a, const ContractedGaussian<T> &b,
            const ContractedGaussian<T> &c, const ContractedGaussian<T> &d) {
    return detail::repulsion_from_pairs(detail::primitive_pairs(a, b),
                                        detail::pair_lmn(a.lmn, b.lmn),
                                        detail::primitive_pairs(c, d),
                                        detail::pair_lmn(c.lmn, d.lmn));
}

template <class T> Matrix<T> overlap_matrix_unchecked(const System<T> &sys) {
    const std::size_t m = sys.n_basis();
    Matrix<T> s(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            s(i, j) = overlap(sys.basis[i], sys.basis[j]);
            s(j, i) = s(i, j);
        }
    }
    return s;
}

/**
 * Overlap matrix S. Throws Error(LinearDependence) when S is not positive
 * definite (Cholesky on primal values), naming the most overlapping pair.
 */
template <class T> Matrix<T> overlap_matrix(const System<T> &sys) {
    Matrix<T> s = overlap_matrix_unchecked(sys);
    const std::size_t m = s.rows();
    std::vector<double> l(m * m, 0.0);
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
        double d = ad::primal(s(j, j));
        for (std::size_t k = 0; k < j; ++k) {
            d -= l[j * m + k] * l[j * m + k];
        }
        if (!(d > 1e-12)) {
            ok = false;
            break;
        }
        l[j * m + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < m; ++i) {
            double v = ad::primal(s(i, j));
            for (std::size_t k = 0; k < j; ++k) {
                v -= l[i * m + k] * l[j * m + k];
            }
            l[i * m + j] = v / l[j * m + j];
        }
    }
    if (!ok) {
        std::size_t bi = 0;
        std::size_t bj = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (std::abs(ad::primal(s(i, j))) > best) {
                    best = std::abs(ad::primal(s(i, j)));
                    bi = i;
                    bj = j;
                }
            }
        }
        fail(ErrorKind::LinearDependence,
             "overlap matrix is not positive definite; basis functions " + std::to_string(bi) +
                 " and " + std::to_string(bj) + " are (nearly) linearly dependent");
    }
    return s;
}

template <class T> Matrix<T> kinetic_matrix(const System<T> &sys) {
    const std::size_t m = sys.n_basis();
    Matrix<T> t(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            t(i, j) = kinetic(sys.basis[i], sys.basis[j]);
            t(j, i) = t(i, j);
        }
    }
    return t;
}

template <class T> Matrix<T> attraction_matrix(const System<T> &sys) {
    const std::size_t m = sys.n_basis();
    Matrix<T> v(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            v(i, j) = attraction(sys.basis[i], sys.basis[j], sys.nuclei);
            v(j, i) = v(i, j);
        }
    }
    return v;
}

template <class T> RepulsionTensor<T> repulsion_tensor(const System<T> &sys) {
    const std::size_t m = sys.n_basis();
    RepulsionTensor<T> eri(m);
    std::vector<std::vector<detail::PrimitivePair<T>>> pairs(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            pairs[i * m + j] = detail::primitive_pairs(sys.basis[i], sys.basis[j]);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const std::size_t ij = i * (i + 1) / 2 + j;
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l <= k; ++l) {
                    const std::size_t kl = k * (k + 1) / 2 + l;
                    if (kl > ij) {
                        continue;
                    }
                    eri(i, j, k, l) = detail::repulsion_from_pairs(
                        pairs[i * m + j], detail::pair_lmn(sys.basis[i].lmn, sys.basis[j].lmn),
                        pairs[k * m + l], detail::pair_lmn(sys.basis[k].lmn, sys.basis[l].lmn));
                }
            }
        }
    }
    return eri;
}

template <class T> IntegralTables<T> compute_integrals(const System<T> &sys) {
    return {overlap_matrix(sys), kinetic_matrix(sys), attraction_matrix(sys),
            repulsion_tensor(sys)};
}

} // namespace diffchem::integrals
