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
#include "diffchem/autodiff/derivatives.hpp"
#include "diffchem/linalg/jacobi.hpp"
#include "diffchem/scf/scf.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace diffchem;
using Catch::Matchers::WithinAbs;
using fixtures::error_kind;
using linalg::Matrix;

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double> &m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e(i, j) = m(i, j);
        }
    }
    return e;
}

Matrix<double> from_eigen(const Eigen::MatrixXd &e) {
    Matrix<double> m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            m(i, j) = e(i, j);
        }
    }
    return m;
}

double variational_energy(const Molecule &mol) {
    const auto sys = mol.system<double>();
    const auto ints = integrals::compute_integrals(sys);
    const auto h = to_eigen(scf::core_hamiltonian(ints.kinetic, ints.attraction));
    const auto s = to_eigen(ints.overlap);
    const double vnn = scf::nuclear_repulsion(sys.nuclei);
    if (mol.n_basis() == 1) {
        // c = 1/sqrt(S): E = 2 h / S + (00|00) / S^2.
        return 2.0 * h(0, 0) / s(0, 0) + ints.repulsion(0, 0, 0, 0) / (s(0, 0) * s(0, 0)) + vnn;
    }
    REQUIRE(mol.n_basis() == 2);
    return oracle::variational_hf_two_functions(
               Eigen::Matrix2d(s), Eigen::Matrix2d(h),
               [&](int i, int j, int k, int l) { return ints.repulsion(i, j, k, l); }) +
           vnn;
}

Molecule transformed(const Molecule &mol, double angle, std::array<double, 3> shift) {
    auto xyz = mol.coordinates();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (std::size_t a = 0; a < xyz.size() / 3; ++a) {
        const double x = xyz[3 * a];
        const double y = xyz[3 * a + 1];
        xyz[3 * a] = c * x - s * y + shift[0];
        xyz[3 * a + 1] = s * x + c * y + shift[1];
        xyz[3 * a + 2] += shift[2];
    }
    return mol.with_coordinates(xyz);
}

} // namespace

TEST_CASE("Jacobi eigensolver matches a dense reference", "[scf]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1, 2, 3, 5, 8}) {
        Matrix<double> a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                a(i, j) = a(j, i) = u(rng);
            }
        }
        const auto eig = linalg::symmetric_eigen(a);
        const Eigen::VectorXd ref =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_eigen(a)).eigenvalues();
        for (std::size_t k = 0; k < n; ++k) {
            CHECK_THAT(eig.values[k], WithinAbs(ref[k], 1e-12));
            if (k > 0) {
                CHECK(eig.values[k - 1] <= eig.values[k]);
            }
            // Largest-magnitude component is positive.
            std::size_t big = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (std::abs(eig.vectors(i, k)) > std::abs(eig.vectors(big, k)) + 1e-12) {
                    big = i;
                }
            }
            CHECK(eig.vectors(big, k) > 0.0);
        }
        const auto v = to_eigen(eig.vectors);
        CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((to_eigen(a) * v - v * Eigen::VectorXd::Map(eig.values.data(), n).asDiagonal())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("core Hamiltonian is T + V and matches quadrature", "[scf]") {
    const auto mol = fixtures::h2();
    const auto sys = mol.system<double>();
    const auto t = integrals::kinetic_matrix(sys);
    const auto v = integrals::attraction_matrix(sys);
    const auto h = scf::core_hamiltonian(sys);
    CHECK(linalg::max_abs_diff(h, t + v) == 0.0);
    const auto q = oracle::one_electron(mol);
    const Eigen::MatrixXd ref = q.kinetic + q.attraction;
    CHECK((to_eigen(h) - ref).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("single hydrogen orbital energy from the generalized problem", "[scf]") {
    System<double> sys;
    sys.nuclei.push_back({1, {0.0, 0.0, 0.0}});
    for (auto bf : load_sto3g("H")) {
        bf.center = sys.nuclei[0].position;
        sys.basis.push_back(bf);
    }
    const auto h = scf::core_hamiltonian(sys);
    const auto s = integrals::overlap_matrix(sys);
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(to_eigen(h), to_eigen(s));
    const auto x = scf::orthogonalizer(s);
    const auto eig = linalg::symmetric_eigen(linalg::transpose(x) * h * x);
    CHECK_THAT(eig.values[0], WithinAbs(ges.eigenvalues()[0], 1e-8));
    // Published STO-3G hydrogen value, for orientation only.
    CHECK_THAT(eig.values[0], WithinAbs(-0.4665819, 1e-6));
}

TEST_CASE("Coulomb and exchange are linear in P", "[scf]") {
    const auto sys = fixtures::h3_plus().system<double>();
    const auto eri = integrals::repulsion_tensor(sys);
    const Matrix<double> zero(3, 3);
    const auto [j0, k0] = scf::coulomb_exchange(zero, eri);
    CHECK(linalg::max_abs_diff(j0, zero) == 0.0);
    CHECK(linalg::max_abs_diff(k0, zero) == 0.0);
    const auto id = Matrix<double>::identity(3);
    const auto [j1, k1] = scf::coulomb_exchange(id, eri);
    const auto [j2, k2] = scf::coulomb_exchange(id * 2.5, eri);
    CHECK(linalg::max_abs_diff(j2, j1 * 2.5) < 1e-14);
    CHECK(linalg::max_abs_diff(k2, k1 * 2.5) < 1e-14);
    CHECK(linalg::max_abs_diff(j1, linalg::transpose(j1)) < 1e-12);
    CHECK(linalg::max_abs_diff(k1, linalg::transpose(k1)) < 1e-12);
}

TEST_CASE("Fock matrix at zero density is the core Hamiltonian", "[scf]") {
    const auto sys = fixtures::h2().system<double>();
    const auto ints = integrals::compute_integrals(sys);
    const auto h = scf::core_hamiltonian(ints.kinetic, ints.attraction);
    const Matrix<double> zero(2, 2);
    const auto [j, k] = scf::coulomb_exchange(zero, ints.repulsion);
    CHECK(linalg::max_abs_diff(scf::fock_matrix(h, j, k), h) == 0.0);
}

TEST_CASE("Fock matrix is half the derivative of the energy in P", "[scf]") {
    // E(P) = 2 sum P H + sum P (2J - K) is quadratic in P, so dE/dP = 2F on
    // symmetric perturbations; off-diagonal steps move both (a,b) and (b,a).
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (const auto &mol : {fixtures::h2(), fixtures::h3_plus(), fixtures::heh_plus()}) {
        const auto sys = mol.system<double>();
        const auto ints = integrals::compute_integrals(sys);
        const auto h = scf::core_hamiltonian(ints.kinetic, ints.attraction);
        const std::size_t m = mol.n_basis();
        Matrix<double> p(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k <= i; ++k) {
                p(i, k) = p(k, i) = u(rng);
            }
        }
        auto energy = [&](const Matrix<double> &d) {
            const auto [j, k] = scf::coulomb_exchange(d, ints.repulsion);
            return scf::electronic_energy(d, h, j, k);
        };
        const auto [j, k] = scf::coulomb_exchange(p, ints.repulsion);
        const auto f = scf::fock_matrix(h, j, k);
        CHECK(linalg::max_abs_diff(f, linalg::transpose(f)) < 1e-12);
        const double step = 1e-5;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                auto plus = p;
                auto minus = p;
                plus(a, b) += step;
                minus(a, b) -= step;
                if (a != b) {
                    plus(b, a) += step;
                    minus(b, a) -= step;
                }
                const double de = (energy(plus) - energy(minus)) / (2.0 * step);
                CHECK_THAT(f(a, b), WithinAbs((a == b ? 0.5 : 0.25) * de, 1e-6));
            }
        }
    }
}

TEST_CASE("symmetric orthogonalizer", "[scf]") {
    const auto id = Matrix<double>::identity(3);
    CHECK(linalg::max_abs_diff(scf::orthogonalizer(id), id) < 1e-15);
    Matrix<double> d(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    const auto x = scf::orthogonalizer(d);
    CHECK_THAT(x(0, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(x(1, 1), WithinAbs(1.0, 1e-15));
    CHECK(x(0, 1) == 0.0);
    const auto s = integrals::overlap_matrix(fixtures::h2().system<double>());
    const auto xs = scf::orthogonalizer(s);
    CHECK(linalg::max_abs_diff(linalg::transpose(xs) * s * xs, Matrix<double>::identity(2)) < 1e-10);
    Matrix<double> sing(2, 2);
    sing(0, 0) = sing(0, 1) = sing(1, 0) = sing(1, 1) = 1.0;
    CHECK(error_kind([&] { (void)scf::orthogonalizer(sing); }) == ErrorKind::LinearDependence);
}

TEST_CASE("H2 and He energies match direct variational minimization", "[scf]") {
    for (const auto &mol : {fixtures::h2(), fixtures::he()}) {
        const auto res = scf::scf_solve(mol.system<double>());
        CHECK_THAT(res.total_energy, WithinAbs(variational_energy(mol), 1e-8));
    }
    CHECK_THAT(scf::hf_energy(fixtures::h2().system<double>()), WithinAbs(-1.1167143251, 1e-9));
    CHECK_THAT(scf::hf_energy(fixtures::he().system<double>()), WithinAbs(-2.8077839575, 1e-8));
}

TEST_CASE("converged SCF invariants", "[scf]") {
    for (const auto &mol : {fixtures::h2(), fixtures::he(), fixtures::heh_plus(),
                            fixtures::h3_plus(), fixtures::make({"Li", "H"}, {0, 0, 0, 0, 0, 3.0})}) {
        const auto res = scf::scf_solve(mol.system<double>());
        const auto &st = res.state;
        const auto &s = res.integrals.overlap;
        CHECK(res.converged);
        CHECK_THAT(linalg::trace(st.density * s), WithinAbs(mol.n_electrons() / 2.0, 1e-8));
        CHECK(linalg::max_abs_diff(st.density * s * st.density, st.density) < 1e-6);
        CHECK(linalg::max_abs_diff(st.density, linalg::transpose(st.density)) < 1e-14);
        const auto cts = linalg::transpose(st.coefficients) * s * st.coefficients;
        CHECK(linalg::max_abs_diff(cts, Matrix<double>::identity(mol.n_basis())) < 1e-8);
        for (std::size_t k = 1; k < st.orbital_energies.size(); ++k) {
            CHECK(st.orbital_energies[k - 1] <= st.orbital_energies[k]);
        }
        CHECK(res.total_energy == res.electronic_energy + res.nuclear_repulsion);
    }
}

TEST_CASE("converged energy is stationary under orbital rotations", "[scf]") {
    const auto mol = fixtures::make({"Li", "H"}, {0, 0, 0, 0, 0, 3.0});
    const auto res = scf::scf_solve(mol.system<double>());
    const auto &ints = res.integrals;
    const auto &h = res.core_hamiltonian;
    auto energy_of = [&](const Matrix<double> &c) {
        const auto p = scf::density_matrix(c, res.n_occupied);
        const auto [j, k] = scf::coulomb_exchange(p, ints.repulsion);
        return scf::electronic_energy(p, h, j, k);
    };
    const double e0 = energy_of(res.state.coefficients);
    const std::size_t m = mol.n_basis();
    for (int i = 0; i < res.n_occupied; ++i) {
        for (std::size_t a = res.n_occupied; a < m; ++a) {
            for (double t : {1e-3, -1e-3}) {
                auto c = res.state.coefficients;
                for (std::size_t mu = 0; mu < m; ++mu) {
                    const double ci = c(mu, i);
                    const double ca = c(mu, a);
                    c(mu, i) = std::cos(t) * ci + std::sin(t) * ca;
                    c(mu, a) = -std::sin(t) * ci + std::cos(t) * ca;
                }
                CHECK(energy_of(c) > e0 - 1e-8);
            }
        }
    }
}

TEST_CASE("SCF either converges or reports non-convergence", "[scf]") {
    scf::ScfConfig tight;
    tight.tol_density = 1e-12;
    tight.tol_energy = 1e-13;
    try {
        const auto res = scf::scf_solve(fixtures::h2(50.0).system<double>(), tight);
        CHECK(res.converged);
        CHECK(res.state.delta_density < tight.tol_density);
    } catch (const ConvergenceError &e) {
        CHECK(e.kind() == ErrorKind::Convergence);
    }
    scf::ScfConfig short_run;
    short_run.max_iterations = 2;
    try {
        (void)scf::scf_solve(fixtures::h3_plus().system<double>(), short_run);
        FAIL("expected non-convergence");
    } catch (const ConvergenceError &e) {
        CHECK(e.delta_p() > 0.0);
        CHECK(e.delta_e() > 0.0);
    }
}

TEST_CASE("nuclear repulsion", "[scf]") {
    CHECK_THAT(scf::nuclear_repulsion(fixtures::h2().system<double>().nuclei),
               WithinAbs(1.0 / 1.4, 1e-15));
    CHECK(scf::nuclear_repulsion(fixtures::he().system<double>().nuclei) == 0.0);
    const double d = 1.65;
    const auto tri = fixtures::make({"H", "H", "H"},
                                    {0, 0, 0, d, 0, 0, d / 2, d * std::sqrt(3.0) / 2, 0}, 1);
    CHECK_THAT(scf::nuclear_repulsion(tri.system<double>().nuclei), WithinAbs(3.0 / d, 1e-14));
    auto sys = fixtures::h2().system<double>();
    sys.nuclei[1].position = sys.nuclei[0].position;
    CHECK(error_kind([&] { (void)scf::nuclear_repulsion(sys.nuclei); }) ==
          ErrorKind::SingularGeometry);
}

TEST_CASE("odd electron count is rejected by the solver", "[scf]") {
    auto sys = fixtures::h2().system<double>();
    sys.n_electrons = 1;
    CHECK(error_kind([&] { (void)scf::scf_solve(sys); }) == ErrorKind::ClosedShellViolation);
}

TEST_CASE("energies are invariant under rigid motions", "[scf]") {
    for (const auto &mol : {fixtures::h3_plus(), fixtures::make({"Li", "H"}, {0, 0, 0, 0.3, 0.4, 2.9})}) {
        const auto a = scf::scf_solve(mol.system<double>());
        const auto b = scf::scf_solve(transformed(mol, 0.7, {1.0, -2.0, 0.5}).system<double>());
        CHECK_THAT(a.total_energy, WithinAbs(b.total_energy, 1e-8));
        for (std::size_t k = 0; k < a.state.orbital_energies.size(); ++k) {
            CHECK_THAT(a.state.orbital_energies[k], WithinAbs(b.state.orbital_energies[k], 1e-8));
        }
    }
}

TEST_CASE("HF gradient obeys Newton's third law", "[scf]") {
    const auto mol = fixtures::h3_plus({true, false, false});
    const auto x0 = pack_parameters(mol).values;
    const auto g = ad::grad(
        [&](const std::vector<ad::Grad> &x) {
            return scf::hf_energy(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)));
        },
        x0);
    for (int axis = 0; axis < 3; ++axis) {
        CHECK(std::abs(g[axis] + g[3 + axis] + g[6 + axis]) < 1e-8);
    }
}

TEST_CASE("HF gradient matches finite differences for every parameter class", "[scf]") {
    for (const auto &mol : {fixtures::h2(1.4, fixtures::kAll), fixtures::h3_plus(fixtures::kAll)}) {
        const auto x0 = pack_parameters(mol).values;
        const auto layout = mol.layout();
        const auto g = ad::grad(
            [&](const std::vector<ad::Grad> &x) {
                return scf::hf_energy(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)));
            },
            x0);
        const auto fd = oracle::fd_gradient(
            [&](const std::vector<double> &x) {
                return scf::hf_energy(mol.lift<double>(std::span<const double>(x)));
            },
            x0, 1e-5);
        for (std::size_t k = 0; k < g.size(); ++k) {
            INFO("slot " << k << " kind " << static_cast<int>(layout[k].kind));
            CHECK_THAT(g[k], WithinAbs(fd[k], 1e-6));
        }
    }
}

TEST_CASE("HF gradient vanishes at the optimal bond length", "[scf]") {
    auto e_of = [](double r) { return scf::hf_energy(fixtures::h2(r).system<double>()); };
    // Golden-section search for the minimum of E(R).
    double lo = 1.2;
    double hi = 1.6;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    while (hi - lo > 1e-9) {
        const double x1 = hi - g * (hi - lo);
        const double x2 = lo + g * (hi - lo);
        if (e_of(x1) < e_of(x2)) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    const auto mol = fixtures::h2(0.5 * (lo + hi), {true, false, false});
    const auto grad = ad::grad(
        [&](const std::vector<ad::Grad> &x) {
            return scf::hf_energy(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)));
        },
        pack_parameters(mol).values);
    double norm = 0.0;
    for (double v : grad) {
        norm += v * v;
    }
    CHECK(std::sqrt(norm) < 1e-5);
    // Published STO-3G equilibrium for orientation.
    CHECK_THAT(0.5 * (lo + hi), WithinAbs(1.346, 2e-3));
}
