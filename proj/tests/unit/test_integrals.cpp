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
#include "diffchem/integrals/boys.hpp"
#include "diffchem/integrals/hermite.hpp"
#include "diffchem/integrals/integrals.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace diffchem;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double boys_quadrature(int n, double x) {
    return oracle::integrate([&](double t) { return std::pow(t, 2 * n) * std::exp(-x * t * t); },
                             0.0, 1.0, 1e-14);
}

void check_against_quadrature(const Molecule &mol) {
    const auto sys = mol.system<double>();
    const auto ints = integrals::compute_integrals(sys);
    const auto q = oracle::one_electron(mol);
    const oracle::AxialRepulsion eri(mol);
    const std::size_t m = mol.n_basis();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            CHECK_THAT(ints.overlap(i, j), WithinAbs(q.overlap(i, j), 1e-7));
            CHECK_THAT(ints.kinetic(i, j), WithinAbs(q.kinetic(i, j), 1e-7));
            CHECK_THAT(ints.attraction(i, j), WithinAbs(q.attraction(i, j), 1e-6));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l <= k; ++l) {
                    if (k * (k + 1) / 2 + l > i * (i + 1) / 2 + j) {
                        continue;
                    }
                    CHECK_THAT(ints.repulsion(i, j, k, l), WithinAbs(eri(i, j, k, l), 1e-6));
                }
            }
        }
    }
}

} // namespace

TEST_CASE("Boys function small-argument identities", "[integrals]") {
    CHECK(integrals::boys(0, 0.0) == 1.0);
    CHECK_THAT(integrals::boys(2, 0.0), WithinAbs(0.2, 1e-16));
    for (int n = 0; n <= 8; ++n) {
        CHECK_THAT(integrals::boys(n, 0.0), WithinAbs(1.0 / (2 * n + 1), 1e-15));
    }
}

TEST_CASE("Boys function matches quadrature of its defining integral", "[integrals]") {
    CHECK_THAT(integrals::boys(0, 10.0), WithinAbs(boys_quadrature(0, 10.0), 1e-12));
    for (int n : {0, 1, 2, 4, 6, 8}) {
        for (double x : {1e-3, 0.3, 2.0, 7.5, 15.0, 24.99, 25.01, 33.0, 60.0}) {
            INFO("n = " << n << ", x = " << x);
            CHECK_THAT(integrals::boys(n, x), WithinAbs(boys_quadrature(n, x), 1e-13));
        }
    }
}

TEST_CASE("Boys branches agree at the switchover", "[integrals]") {
    const double below = std::nextafter(integrals::kBoysSwitch, 0.0);
    for (int n = 0; n <= 8; ++n) {
        CHECK_THAT(integrals::boys(n, below),
                   WithinAbs(integrals::boys(n, integrals::kBoysSwitch), 1e-13));
    }
}

TEST_CASE("Boys derivative is -F_{n+1}", "[integrals]") {
    const auto x = ad::Dual<double, 1>::variable(3.7, 0);
    for (int n = 0; n < 5; ++n) {
        CHECK_THAT(integrals::boys(n, x).tangent(0),
                   WithinAbs(-integrals::boys(n + 1, 3.7), 1e-15));
    }
}

TEST_CASE("Boys rejects a negative argument", "[integrals]") {
    CHECK_THROWS_AS(integrals::boys(0, -1e-3), Error);
}

TEST_CASE("Hermite coefficients reduce to the Gaussian product theorem", "[integrals]") {
    auto same = integrals::hermite_coefficients(0, 0, 0.8, 1.3, 0.4, 0.4);
    REQUIRE(same.size() == 1);
    CHECK_THAT(same[0], WithinAbs(1.0, 1e-15));
    const double a = 0.8;
    const double b = 1.3;
    const double d = 1.1;
    const auto e = integrals::hermite_coefficients(0, 0, a, b, 0.0, d);
    CHECK_THAT(e[0], WithinAbs(std::exp(-a * b / (a + b) * d * d), 1e-15));
}

TEST_CASE("p-s Hermite coefficients reproduce the 1-D overlap", "[integrals]") {
    const double a = 0.7;
    const double b = 1.9;
    const double ax = -0.3;
    const double bx = 0.9;
    const auto e = integrals::hermite_coefficients(1, 0, a, b, ax, bx);
    REQUIRE(e.size() == 2);
    const double p = a + b;
    const double quad = oracle::integrate(
        [&](double x) { return (x - ax) * std::exp(-a * (x - ax) * (x - ax) - b * (x - bx) * (x - bx)); },
        -12.0, 12.0);
    CHECK_THAT(e[0] * std::sqrt(std::numbers::pi / p), WithinAbs(quad, 1e-10));
    // Beyond l1 + l2 the expansion terminates.
    const integrals::HermiteTable<double> table(1, 0, a, b, ax, bx);
    CHECK(table.get(1, 0, 2) == 0.0);
}

TEST_CASE("H2 integrals match numerical quadrature", "[integrals]") {
    check_against_quadrature(fixtures::h2());
}

TEST_CASE("HeH+ integrals match numerical quadrature", "[integrals]") {
    check_against_quadrature(fixtures::heh_plus());
}

TEST_CASE("normalized basis has unit diagonal overlap", "[integrals]") {
    for (const auto &mol : {fixtures::h2(), fixtures::h3_plus(),
                            fixtures::make({"Li", "H"}, {0.1, -0.2, 0.3, 1.2, 0.9, 2.5})}) {
        const auto s = integrals::overlap_matrix(mol.system<double>());
        for (std::size_t i = 0; i < s.rows(); ++i) {
            CHECK_THAT(s(i, i), WithinAbs(1.0, 1e-10));
        }
    }
}

TEST_CASE("overlap decays with separation", "[integrals]") {
    const auto s = integrals::overlap_matrix(fixtures::h2(50.0).system<double>());
    CHECK(std::abs(s(0, 1)) < 1e-10);
}

TEST_CASE("single primitive closed forms", "[integrals]") {
    const double alpha = 0.77;
    ContractedGaussian<double> g{{0, 0, 0}, 0, {0.0, 0.0, 0.3}, {alpha}, {1.0}};
    CHECK_THAT(integrals::overlap(g, g), WithinAbs(1.0, 1e-14));
    CHECK_THAT(integrals::kinetic(g, g), WithinAbs(1.5 * alpha, 1e-13));
    // Nucleus on the centre: -Z 2 sqrt(2 alpha / pi).
    const std::vector<Nucleus<double>> nuc{{1, {0.0, 0.0, 0.3}}};
    CHECK_THAT(integrals::attraction(g, g, nuc),
               WithinAbs(-2.0 * std::sqrt(2.0 * alpha / std::numbers::pi), 1e-13));
    const auto prim = oracle::primitives(g);
    CHECK_THAT(integrals::attraction(g, g, nuc),
               WithinAbs(-oracle::coulomb(prim, prim, 0.3), 1e-8));
}

TEST_CASE("one-centre attraction matches quadrature", "[integrals]") {
    const auto he = fixtures::he();
    const auto q = oracle::one_electron(he);
    const auto v = integrals::attraction_matrix(he.system<double>());
    CHECK_THAT(v(0, 0), WithinAbs(q.attraction(0, 0), 1e-8));
}

TEST_CASE("attraction is linear in the nuclear charges", "[integrals]") {
    auto sys = fixtures::h3_plus().system<double>();
    const auto v1 = integrals::attraction_matrix(sys);
    for (auto &n : sys.nuclei) {
        n.charge *= 2;
    }
    const auto v2 = integrals::attraction_matrix(sys);
    for (std::size_t i = 0; i < v1.rows(); ++i) {
        for (std::size_t j = 0; j < v1.cols(); ++j) {
            CHECK(v2(i, j) == 2.0 * v1(i, j));
        }
    }
}

TEST_CASE("repulsion tensor has 8-fold symmetry", "[integrals]") {
    const auto mol = fixtures::make({"Li", "H"}, {0.1, -0.2, 0.3, 1.2, 0.9, 2.5});
    const auto eri = integrals::repulsion_tensor(mol.system<double>());
    const std::size_t m = mol.n_basis();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < m; ++l) {
                    const double v = eri(i, j, k, l);
                    CHECK(eri(j, i, k, l) == v);
                    CHECK(eri(i, j, l, k) == v);
                    CHECK(eri(k, l, i, j) == v);
                    CHECK(eri(l, k, j, i) == v);
                    const auto c = integrals::RepulsionTensor<double>::canonical(i, j, k, l);
                    CHECK(eri(c[0], c[1], c[2], c[3]) == v);
                    CHECK(c <= std::array<std::size_t, 4>{i, j, k, l});
                }
            }
        }
    }
}

TEST_CASE("repulsion entries with p functions match direct contraction", "[integrals]") {
    // Element-by-element evaluation and the tabulated tensor share no state.
    const auto sys = fixtures::make({"Li", "H"}, {0.1, -0.2, 0.3, 1.2, 0.9, 2.5}).system<double>();
    const auto eri = integrals::repulsion_tensor(sys);
    const auto &b = sys.basis;
    CHECK_THAT(eri(2, 3, 4, 5), WithinAbs(integrals::repulsion(b[3], b[2], b[5], b[4]), 1e-14));
    CHECK_THAT(eri(4, 0, 4, 1), WithinAbs(integrals::repulsion(b[4], b[1], b[4], b[0]), 1e-14));
}

TEST_CASE("integrals are invariant under rigid translation", "[integrals]") {
    const std::vector<double> xyz{0.1, -0.2, 0.3, 1.2, 0.9, 2.5};
    std::vector<double> moved = xyz;
    for (std::size_t k = 0; k < moved.size(); ++k) {
        moved[k] += (k % 3 == 0 ? 0.7 : (k % 3 == 1 ? -1.3 : 2.1));
    }
    const auto a = integrals::compute_integrals(fixtures::make({"Li", "H"}, xyz).system<double>());
    const auto b = integrals::compute_integrals(fixtures::make({"Li", "H"}, moved).system<double>());
    CHECK(linalg::max_abs_diff(a.overlap, b.overlap) < 1e-12);
    CHECK(linalg::max_abs_diff(a.kinetic, b.kinetic) < 1e-12);
    CHECK(linalg::max_abs_diff(a.attraction, b.attraction) < 1e-12);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.repulsion.storage().size(); ++k) {
        worst = std::max(worst, std::abs(a.repulsion.storage()[k] - b.repulsion.storage()[k]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("traces of S and T are rotation invariant", "[integrals]") {
    const std::vector<double> xyz{0.1, -0.2, 0.3, 1.2, 0.9, 2.5};
    const double c = std::cos(0.83);
    const double s = std::sin(0.83);
    std::vector<double> rotated(xyz.size());
    for (std::size_t a = 0; a < 2; ++a) {
        const double x = xyz[3 * a];
        const double y = xyz[3 * a + 1];
        const double z = xyz[3 * a + 2];
        rotated[3 * a] = c * x - s * z;
        rotated[3 * a + 1] = y;
        rotated[3 * a + 2] = s * x + c * z;
    }
    const auto a = integrals::compute_integrals(fixtures::make({"Li", "H"}, xyz).system<double>());
    const auto b =
        integrals::compute_integrals(fixtures::make({"Li", "H"}, rotated).system<double>());
    CHECK_THAT(linalg::trace(a.overlap), WithinAbs(linalg::trace(b.overlap), 1e-10));
    CHECK_THAT(linalg::trace(a.kinetic), WithinAbs(linalg::trace(b.kinetic), 1e-10));
}

TEST_CASE("overlap matrix is positive definite", "[integrals]") {
    for (const auto &mol : {fixtures::h2(), fixtures::heh_plus(), fixtures::h3_plus(),
                            fixtures::make({"Li", "H"}, {0, 0, 0, 0, 0, 3.0})}) {
        const auto s = integrals::overlap_matrix(mol.system<double>());
        Eigen::MatrixXd e(s.rows(), s.cols());
        for (std::size_t i = 0; i < s.rows(); ++i) {
            for (std::size_t j = 0; j < s.cols(); ++j) {
                e(i, j) = s(i, j);
            }
        }
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues().minCoeff() > 1e-8);
    }
}

TEST_CASE("coincident identical functions are linearly dependent", "[integrals]") {
    auto sys = fixtures::h2().system<double>();
    sys.basis[1].center = sys.basis[0].center;
    try {
        (void)integrals::overlap_matrix(sys);
        FAIL("expected a linear-dependence error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::LinearDependence);
        CHECK(std::string(e.what()).find("0 and 1") != std::string::npos);
    }
}

TEST_CASE("integral tangents match finite differences", "[integrals]") {
    const auto mol = fixtures::make({"Li", "H"}, {0.1, -0.2, 0.3, 1.2, 0.9, 2.5}, 0,
                                    fixtures::kAll);
    const auto x0 = pack_parameters(mol).values;
    // A fixed random-looking linear functional of every table.
    auto functional = [&](const auto &sys) {
        using T = std::decay_t<decltype(sys.basis[0].exponents[0])>;
        const auto ints = integrals::compute_integrals(sys);
        T acc(0.0);
        double w = 0.3;
        for (std::size_t i = 0; i < sys.n_basis(); ++i) {
            for (std::size_t j = 0; j < sys.n_basis(); ++j) {
                w = std::fmod(w * 7.31 + 0.17, 1.0) - 0.5;
                acc += (ints.overlap(i, j) + ints.kinetic(i, j) + ints.attraction(i, j) +
                        ints.repulsion(i, j, j, i) + ints.repulsion(i, i, j, 0)) *
                       w;
            }
        }
        return acc;
    };
    const auto g = ad::grad(
        [&](const std::vector<ad::Grad> &x) {
            return functional(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)));
        },
        x0);
    const auto fd = oracle::fd_gradient(
        [&](const std::vector<double> &x) {
            return functional(mol.lift<double>(std::span<const double>(x)));
        },
        x0, 1e-5);
    for (std::size_t k = 0; k < g.size(); ++k) {
        INFO("parameter " << k);
        CHECK(std::abs(g[k] - fd[k]) <= 1e-6 * std::max(1.0, std::abs(fd[k])));
    }
}
