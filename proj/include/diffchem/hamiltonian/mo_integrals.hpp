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

#include "diffchem/error.hpp"
#include "diffchem/integrals/integrals.hpp"
#include "diffchem/linalg/matrix.hpp"
#include "diffchem/scf/scf.hpp"

#include <vector>

namespace diffchem::ham {

using linalg::Matrix;

/**
 * Integrals over spatial molecular orbitals.
 *
 * two_body uses the ordering of the second-quantized Hamiltonian
 *   H = sum h_pq a+_p a_q + 1/2 sum h_pqrs a+_p a+_q a_r a_s,
 * i.e. h_pqrs = integral phi_p(1) phi_q(2) phi_r(2) phi_s(1) / r12, which is
 * the chemist-ordered (ps|qr).
 */
template <class T> struct MOIntegrals {
    std::size_t n_orbitals = 0;
    Matrix<T> one_body;
    std::vector<T> two_body;
    T core_constant{};

    [[nodiscard]] std::size_t index(std::size_t p, std::size_t q, std::size_t r,
                                    std::size_t s) const {
        return ((p * n_orbitals + q) * n_orbitals + r) * n_orbitals + s;
    }
    [[nodiscard]] const T &h2(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
        return two_body[index(p, q, r, s)];
    }
    T &h2(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
        return two_body[index(p, q, r, s)];
    }
};

/// Transforms AO integrals with orbital coefficients C (columns = MOs).
template <class T>
MOIntegrals<T> mo_integrals(const Matrix<T> &coefficients, const Matrix<T> &core,
                            const integrals::RepulsionTensor<T> &eri, const T &core_constant) {
    const std::size_t n = coefficients.rows();
    const std::size_t m = coefficients.cols();
    if (core.rows() != n || core.cols() != n || eri.dimension() != n) {
        fail(ErrorKind::Contract, "mo_integrals: coefficient and integral dimensions disagree");
    }
    MOIntegrals<T> out;
    out.n_orbitals = m;
    out.core_constant = core_constant;
    out.one_body = linalg::transpose(coefficients) * core * coefficients;

    // Quarter transforms of the chemist tensor (mu nu|la si), one index at a time.
    auto at = [](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t d1,
                 std::size_t d2, std::size_t d3) { return ((a * d1 + b) * d2 + c) * d3 + d; };
    std::vector<T> t0(n * n * n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t d = 0; d < n; ++d) {
                    t0[at(a, b, c, d, n, n, n)] = eri(a, b, c, d);
                }
            }
        }
    }
    // (p nu|la si)
    std::vector<T> t1(m * n * n * n, T(0));
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t a = 0; a < n; ++a) {
            const T c = coefficients(a, p);
            for (std::size_t rest = 0; rest < n * n * n; ++rest) {
                t1[p * n * n * n + rest] += c * t0[a * n * n * n + rest];
            }
        }
    }
    // (p q|la si)
    std::vector<T> t2(m * m * n * n, T(0));
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t b = 0; b < n; ++b) {
                const T c = coefficients(b, q);
                for (std::size_t rest = 0; rest < n * n; ++rest) {
                    t2[(p * m + q) * n * n + rest] += c * t1[(p * n + b) * n * n + rest];
                }
            }
        }
    }
    // (p q|r si)
    std::vector<T> t3(m * m * m * n, T(0));
    for (std::size_t pq = 0; pq < m * m; ++pq) {
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const T w = coefficients(c, r);
                for (std::size_t d = 0; d < n; ++d) {
                    t3[(pq * m + r) * n + d] += w * t2[(pq * n + c) * n + d];
                }
            }
        }
    }
    // (p q|r s)
    std::vector<T> chem(m * m * m * m, T(0));
    for (std::size_t pqr = 0; pqr < m * m * m; ++pqr) {
        for (std::size_t s = 0; s < m; ++s) {
            T acc(0);
            for (std::size_t d = 0; d < n; ++d) {
                acc += coefficients(d, s) * t3[pqr * n + d];
            }
            chem[pqr * m + s] = acc;
        }
    }
    out.two_body.assign(m * m * m * m, T(0));
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t s = 0; s < m; ++s) {
                    out.h2(p, q, r, s) = chem[((p * m + s) * m + q) * m + r];
                }
            }
        }
    }
    return out;
}

template <class T> MOIntegrals<T> mo_integrals(const scf::ScfResult<T> &result) {
    if (!result.converged) {
        fail(ErrorKind::Contract, "mo_integrals needs a converged SCF result");
    }
    return mo_integrals(result.state.coefficients, result.core_hamiltonian,
                        result.integrals.repulsion, result.nuclear_repulsion);
}

/// Closed-shell HF electronic energy reassembled from MO integrals.
template <class T> T hf_energy_from_mo(const MOIntegrals<T> &mo, int n_occupied) {
    T e(0);
    for (int i = 0; i < n_occupied; ++i) {
        e += 2.0 * mo.one_body(i, i);
        for (int j = 0; j < n_occupied; ++j) {
            e += 2.0 * mo.h2(i, j, j, i) - mo.h2(i, j, i, j);
        }
    }
    return e;
}

} // namespace diffchem::ham
