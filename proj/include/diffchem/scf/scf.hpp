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

#include "diffchem/integrals/integrals.hpp"
#include "diffchem/linalg/jacobi.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace diffchem::scf {

using linalg::Matrix;

struct ScfConfig {
    int max_iterations = 200;
    double tol_density = 1e-10; ///< max |P_new - P_old|
    double tol_energy = 1e-12;  ///< |E_new - E_old|, hartree
    double mixing = 0.0;        ///< fraction of the previous density kept (0 = off)
    /// Extra fixed-point iterations after primal convergence, applied only when
    /// the scalar carries tangents so that derivative components settle too.
    int tangent_iterations = 3;
};

template <class T> struct ScfState {
    Matrix<T> coefficients;
    Matrix<T> density;
    Matrix<T> fock;
    std::vector<T> orbital_energies;
    int iteration = 0;
    double delta_density = 0.0;
    double delta_energy = 0.0;
};

template <class T> struct ScfResult {
    ScfState<T> state;
    T electronic_energy{};
    T nuclear_repulsion{};
    T total_energy{};
    int iterations = 0;
    /// Set when two orbital energies are closer than 1e-10 at convergence;
    /// tangents are then not guaranteed to be correct.
    bool degenerate_orbitals = false;
    integrals::IntegralTables<T> integrals;
    Matrix<T> core_hamiltonian;
    int n_occupied = 0;
    bool converged = false;
};

template <class T> Matrix<T> core_hamiltonian(const Matrix<T> &kinetic, const Matrix<T> &attraction) {
    return kinetic + attraction;
}

template <class T> Matrix<T> core_hamiltonian(const System<T> &sys) {
    return core_hamiltonian(integrals::kinetic_matrix(sys), integrals::attraction_matrix(sys));
}

/// J_{mn} = sum P_{eg} (mn|eg) and K_{mn} = sum P_{eg} (me|ng).
template <class T>
std::pair<Matrix<T>, Matrix<T>> coulomb_exchange(const Matrix<T> &density,
                                                 const integrals::RepulsionTensor<T> &eri) {
    const std::size_t m = density.rows();
    Matrix<T> j(m, m);
    Matrix<T> k(m, m);
    for (std::size_t mu = 0; mu < m; ++mu) {
        for (std::size_t nu = 0; nu <= mu; ++nu) {
            T jv(0);
            T kv(0);
            for (std::size_t e = 0; e < m; ++e) {
                for (std::size_t g = 0; g < m; ++g) {
                    const T &p = density(e, g);
                    if (ad::is_zero(p)) {
                        continue;
                    }
                    jv += p * eri(mu, nu, e, g);
                    kv += p * eri(mu, e, nu, g);
                }
            }
            j(mu, nu) = jv;
            j(nu, mu) = jv;
            k(mu, nu) = kv;
            k(nu, mu) = kv;
        }
    }
    return {std::move(j), std::move(k)};
}

template <class T>
Matrix<T> fock_matrix(const Matrix<T> &core, const Matrix<T> &coulomb, const Matrix<T> &exchange) {
    const std::size_t m = core.rows();
    Matrix<T> f(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            f(i, j) = core(i, j) + T(2.0) * coulomb(i, j) - exchange(i, j);
        }
    }
    return f;
}

/// E = 2 sum P H + sum P (2J - K), with P built from occupied orbitals only.
template <class T>
T electronic_energy(const Matrix<T> &density, const Matrix<T> &core, const Matrix<T> &coulomb,
                    const Matrix<T> &exchange) {
    T e(0);
    for (std::size_t k = 0; k < density.data().size(); ++k) {
        const T &p = density.data()[k];
        e += p * (T(2.0) * core.data()[k] + T(2.0) * coulomb.data()[k] - exchange.data()[k]);
    }
    return e;
}

/// P_{mn} = sum_{i < n_occ} C_{mi} C_{ni}.
template <class T> Matrix<T> density_matrix(const Matrix<T> &c, int n_occupied) {
    const std::size_t m = c.rows();
    Matrix<T> p(m, m);
    for (std::size_t mu = 0; mu < m; ++mu) {
        for (std::size_t nu = 0; nu <= mu; ++nu) {
            T v(0);
            for (int i = 0; i < n_occupied; ++i) {
                v += c(mu, i) * c(nu, i);
            }
            p(mu, nu) = v;
            p(nu, mu) = v;
        }
    }
    return p;
}

/// Symmetric orthogonalizer X = V D^{-1/2} V^T of the overlap matrix.
template <class T> Matrix<T> orthogonalizer(const Matrix<T> &s) {
    using std::sqrt;
    const auto eig = linalg::symmetric_eigen(s);
    const std::size_t m = s.rows();
    for (std::size_t i = 0; i < m; ++i) {
        if (ad::primal(eig.values[i]) < 1e-8) {
            fail(ErrorKind::LinearDependence,
                 "overlap eigenvalue " + std::to_string(ad::primal(eig.values[i])) +
                     " below 1e-8; basis is linearly dependent");
        }
    }
    Matrix<T> x(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        const T inv_sqrt = T(1.0) / sqrt(eig.values[k]);
        for (std::size_t i = 0; i < m; ++i) {
            const T vik = eig.vectors(i, k) * inv_sqrt;
            for (std::size_t j = 0; j < m; ++j) {
                x(i, j) += vik * eig.vectors(j, k);
            }
        }
    }
    return x;
}

/// Sum over nuclear pairs of Z_i Z_j / |R_i - R_j|.
template <class T> T nuclear_repulsion(const std::vector<Nucleus<T>> &nuclei) {
    using std::sqrt;
    T e(0);
    for (std::size_t i = 0; i < nuclei.size(); ++i) {
        for (std::size_t j = i + 1; j < nuclei.size(); ++j) {
            T r2(0);
            for (int k = 0; k < 3; ++k) {
                const T d = nuclei[i].position[k] - nuclei[j].position[k];
                r2 += d * d;
            }
            if (!(ad::primal(r2) > 1e-20)) {
                fail(ErrorKind::SingularGeometry,
                     "nuclei " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            }
            e += T(double(nuclei[i].charge * nuclei[j].charge)) / sqrt(r2);
        }
    }
    return e;
}

namespace detail {

template <class T> double max_abs_delta(const Matrix<T> &a, const Matrix<T> &b) {
    return linalg::max_abs_diff(a, b);
}

/// Diagonalizes F in the orthogonal basis; returns (C, orbital energies, degenerate).
template <class T>
std::tuple<Matrix<T>, std::vector<T>, bool> roothaan_step(const Matrix<T> &fock,
                                                          const Matrix<T> &x) {
    const Matrix<T> xt = linalg::transpose(x);
    const Matrix<T> ft = xt * fock * x;
    auto eig = linalg::symmetric_eigen(ft);
    return {x * eig.vectors, std::move(eig.values), eig.degenerate};
}

} // namespace detail

/**
 * Restricted closed-shell SCF by plain fixed-point iteration from a zero
 * coefficient matrix (so the first Fock matrix is the core Hamiltonian).
 * Iteration stops once max|dP| < tol_density and |dE| < tol_energy.
 */
template <class T>
ScfResult<T> scf_solve(const System<T> &sys, const ScfConfig &config = {}) {
    if (sys.n_electrons % 2 != 0) {
        fail(ErrorKind::ClosedShellViolation, "restricted SCF needs an even electron count");
    }
    ScfResult<T> result;
    result.integrals = integrals::compute_integrals(sys);
    const auto &ints = result.integrals;
    result.core_hamiltonian = core_hamiltonian(ints.kinetic, ints.attraction);
    const Matrix<T> &h = result.core_hamiltonian;
    const Matrix<T> x = orthogonalizer(ints.overlap);
    const std::size_t m = sys.n_basis();
    const int n_occ = sys.n_electrons / 2;
    if (static_cast<std::size_t>(n_occ) > m) {
        fail(ErrorKind::Input, "more occupied orbitals than basis functions");
    }
    result.n_occupied = n_occ;

    Matrix<T> p(m, m);
    double e_old = 0.0;
    int extra = ad::is_dual_v<T> ? config.tangent_iterations : 0;
    bool converged = false;
    ScfState<T> &st = result.state;
    const int limit = config.max_iterations + extra;
    for (int it = 1; it <= limit; ++it) {
        auto [j, k] = coulomb_exchange(p, ints.repulsion);
        const Matrix<T> f = fock_matrix(h, j, k);
        const double e = ad::primal(electronic_energy(p, h, j, k));
        auto [c, eps, degenerate] = detail::roothaan_step(f, x);
        Matrix<T> p_new = density_matrix(c, n_occ);
        if (config.mixing > 0.0 && it > 1) {
            p_new = p_new * (1.0 - config.mixing) + p * config.mixing;
        }
        st.delta_density = detail::max_abs_delta(p_new, p);
        st.delta_energy = std::abs(e - e_old);
        st.iteration = it;
        p = std::move(p_new);
        e_old = e;
        if (converged) {
            if (--extra <= 0) {
                break;
            }
            continue;
        }
        if (st.delta_density < config.tol_density && st.delta_energy < config.tol_energy) {
            converged = true;
            if (extra <= 0) {
                break;
            }
        } else if (it >= config.max_iterations) {
            throw ConvergenceError("SCF did not converge in " +
                                       std::to_string(config.max_iterations) +
                                       " iterations (dP = " + std::to_string(st.delta_density) +
                                       ", dE = " + std::to_string(st.delta_energy) + ")",
                                   st.delta_density, st.delta_energy);
        }
    }
    if (!converged) {
        throw ConvergenceError("SCF did not converge", st.delta_density, st.delta_energy);
    }

    auto [j, k] = coulomb_exchange(p, ints.repulsion);
    st.fock = fock_matrix(h, j, k);
    auto [c, eps, degenerate] = detail::roothaan_step(st.fock, x);
    st.coefficients = std::move(c);
    st.orbital_energies = std::move(eps);
    st.density = std::move(p);
    result.degenerate_orbitals = degenerate;
    result.iterations = st.iteration;
    result.electronic_energy = electronic_energy(st.density, h, j, k);
    result.nuclear_repulsion = nuclear_repulsion(sys.nuclei);
    result.total_energy = result.electronic_energy + result.nuclear_repulsion;
    result.converged = true;
    return result;
}

/// Total Hartree-Fock energy; differentiable when T is a dual scalar.
template <class T> T hf_energy(const System<T> &sys, const ScfConfig &config = {}) {
    return scf_solve(sys, config).total_energy;
}

} // namespace diffchem::scf
