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
#include "diffchem/circuits/circuit.hpp"
#include "diffchem/hamiltonian/molecular.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace diffchem;
using namespace diffchem::circ;
using Catch::Matchers::WithinAbs;
using fixtures::error_kind;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(std::mt19937_64 &rng, unsigned n) {
    std::normal_distribution<double> g;
    std::vector<cplx> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &x : a) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(norm);
    }
    return StateVector(n, a);
}

/// Basis state from a bit string read left to right as wires 0, 1, ...
StateVector ket(const std::string &bits) {
    std::vector<unsigned> occ;
    for (unsigned k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            occ.push_back(k);
        }
    }
    const auto n = static_cast<unsigned>(bits.size());
    return StateVector::basis_state(n, occupation_index(n, occ));
}

double max_diff(const StateVector &a, const StateVector &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

ham::SparseMatrix random_hamiltonian(std::mt19937_64 &rng, unsigned n) {
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ham::PauliSum<double> ps(n);
    for (int t = 0; t < 12; ++t) {
        ham::PauliWord w;
        for (unsigned q = 0; q < n; ++q) {
            w.set(q, static_cast<ham::PauliLetter>(letter(rng)));
        }
        ps.add(u(rng), w);
    }
    return ham::to_sparse(ham::simplify(ps));
}

Circuit random_circuit(std::mt19937_64 &rng, unsigned n, int n_gates) {
    std::uniform_int_distribution<unsigned> wire(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    Circuit c(n);
    for (int g = 0; g < n_gates; ++g) {
        std::vector<unsigned> w;
        const std::size_t want = (n >= 4 && coin(rng)) ? 4 : 2;
        while (w.size() < want) {
            const unsigned k = wire(rng);
            if (std::find(w.begin(), w.end(), k) == w.end()) {
                w.push_back(k);
            }
        }
        if (want == 2) {
            c.add_single(w[0], w[1]);
        } else {
            c.add_double(w[0], w[1], w[2], w[3]);
        }
    }
    return c;
}

std::vector<double> fd_gradient(const Circuit &c, std::vector<double> theta, const StateVector &init,
                                const ham::SparseMatrix &h, double step) {
    std::vector<double> g(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double t0 = theta[k];
        theta[k] = t0 + step;
        const double ep = expectation(run(c, theta, init), h);
        theta[k] = t0 - step;
        const double em = expectation(run(c, theta, init), h);
        theta[k] = t0;
        g[k] = (ep - em) / (2.0 * step);
    }
    return g;
}

} // namespace

TEST_CASE("Hartree-Fock basis states", "[circuits]") {
    const auto s = prepare_hf_state(2, 4);
    CHECK(max_diff(s, ket("1100")) == 0.0);
    CHECK(s[0b1100] == cplx(1.0));
    CHECK(max_diff(prepare_hf_state(0, 3), ket("000")) == 0.0);
    CHECK(particle_number(prepare_hf_state(3, 6)) == 3.0);
    CHECK(error_kind([] { (void)prepare_hf_state(5, 4); }) == ErrorKind::Input);
}

TEST_CASE("single excitation gate", "[circuits]") {
    std::mt19937_64 rng(1);
    const auto psi = random_state(rng, 3);
    auto same = psi;
    apply_single_excitation(same, 0.0, 0, 2);
    CHECK(max_diff(same, psi) < 1e-15);

    auto flip = ket("01");
    apply_single_excitation(flip, kPi, 0, 1);
    CHECK(max_diff(flip, ket("10")) < 1e-15);

    // Matrix on the (p, q) subspace, with spectator qubit 1 in |1>.
    const double th = 0.9;
    const double c = std::cos(th / 2);
    const double s = std::sin(th / 2);
    auto a = ket("011");
    apply_single_excitation(a, th, 0, 2);
    CHECK(max_diff(a, StateVector(3, [&] {
                       auto v = std::vector<cplx>(8, 0.0);
                       v[0b011] = c;
                       v[0b110] = s;
                       return v;
                   }())) < 1e-15);
    auto b = ket("110");
    apply_single_excitation(b, th, 0, 2);
    CHECK_THAT(b[0b110].real(), WithinAbs(c, 1e-15));
    CHECK_THAT(b[0b011].real(), WithinAbs(-s, 1e-15));
    for (const char *fixed : {"000", "010", "101", "111"}) {
        auto k = ket(fixed);
        apply_single_excitation(k, th, 0, 2);
        CHECK(max_diff(k, ket(fixed)) == 0.0);
    }

    for (int trial = 0; trial < 20; ++trial) {
        auto r = random_state(rng, 5);
        const double n0 = particle_number(r);
        apply_single_excitation(r, std::uniform_real_distribution<double>(-7, 7)(rng), trial % 5,
                                (trial + 2) % 5);
        CHECK_THAT(r.norm(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(particle_number(r), WithinAbs(n0, 1e-12));
    }
    CHECK(error_kind([&] { apply_single_excitation(a, 0.1, 0, 3); }) == ErrorKind::Input);
    CHECK(error_kind([&] { apply_single_excitation(a, 0.1, 1, 1); }) == ErrorKind::Input);
}

TEST_CASE("double excitation gate", "[circuits]") {
    std::mt19937_64 rng(2);
    auto up = ket("0011");
    apply_double_excitation(up, kPi, 0, 1, 2, 3);
    CHECK(max_diff(up, ket("1100")) < 1e-15);
    auto mixed = ket("0101");
    apply_double_excitation(mixed, 1.3, 0, 1, 2, 3);
    CHECK(max_diff(mixed, ket("0101")) == 0.0);
    auto psi = random_state(rng, 4);
    auto same = psi;
    apply_double_excitation(same, 0.0, 0, 1, 2, 3);
    CHECK(max_diff(same, psi) < 1e-15);

    // Full 16x16 reconstruction from basis states.
    const double th = -2.1;
    const double c = std::cos(th / 2);
    const double s = std::sin(th / 2);
    for (std::uint64_t col = 0; col < 16; ++col) {
        auto k = StateVector::basis_state(4, col);
        apply_double_excitation(k, th, 0, 1, 2, 3);
        for (std::uint64_t row = 0; row < 16; ++row) {
            double expect = row == col ? 1.0 : 0.0;
            if (col == 0b0011) {
                expect = row == 0b0011 ? c : (row == 0b1100 ? s : 0.0);
            } else if (col == 0b1100) {
                expect = row == 0b1100 ? c : (row == 0b0011 ? -s : 0.0);
            }
            CHECK(std::abs(k[row] - expect) < 1e-15);
        }
    }
    // Spectators: wires 1 and 5 are untouched.
    auto wide = ket("010110");
    apply_double_excitation(wide, kPi, 0, 2, 3, 4);
    CHECK(max_diff(wide, ket("111000")) < 1e-15);

    for (int trial = 0; trial < 20; ++trial) {
        auto r = random_state(rng, 6);
        const double n0 = particle_number(r);
        apply_double_excitation(r, std::uniform_real_distribution<double>(-7, 7)(rng), 5, 1, 3,
                                trial % 3 == 0 ? 0 : 2);
        CHECK_THAT(r.norm(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(particle_number(r), WithinAbs(n0, 1e-12));
    }
    CHECK(error_kind([&] { apply_double_excitation(psi, 0.1, 0, 1, 1, 2); }) == ErrorKind::Input);
}

TEST_CASE("excitation gates form one-parameter groups", "[circuits]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const double t1 = std::uniform_real_distribution<double>(-4, 4)(rng);
        const double t2 = std::uniform_real_distribution<double>(-4, 4)(rng);
        const auto psi = random_state(rng, 4);
        auto a = psi;
        apply_single_excitation(a, t1, 1, 3);
        apply_single_excitation(a, t2, 1, 3);
        auto b = psi;
        apply_single_excitation(b, t1 + t2, 1, 3);
        CHECK(max_diff(a, b) < 1e-12);
        a = psi;
        apply_double_excitation(a, t1, 0, 2, 1, 3);
        apply_double_excitation(a, t2, 0, 2, 1, 3);
        b = psi;
        apply_double_excitation(b, t1 + t2, 0, 2, 1, 3);
        CHECK(max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("circuit construction and execution", "[circuits]") {
    const auto hf = prepare_hf_state(2, 4);
    const Circuit empty(4);
    CHECK(max_diff(run(empty, {}, hf), hf) == 0.0);

    const auto asd = all_singles_doubles(2, 4);
    CHECK(max_diff(run(asd, {0.0, 0.0, 0.0}, hf), hf) == 0.0);
    CHECK(error_kind([&] { (void)run(asd, {0.0}, hf); }) == ErrorKind::Input);

    Circuit c(4);
    CHECK(c.add_single(0, 2) == 0);
    CHECK(c.add_double(0, 1, 2, 3) == 1);
    CHECK(c.add({GateKind::SingleExcitation, {1, 3}, 0}) == 0);
    CHECK(c.n_parameters() == 2);
    CHECK(error_kind([&] { c.add({GateKind::SingleExcitation, {0, 4}, {}}); }) == ErrorKind::Input);
    CHECK(error_kind([&] { c.add({GateKind::DoubleExcitation, {0, 1, 2}, {}}); }) ==
          ErrorKind::Input);
    CHECK(error_kind([&] { c.add({GateKind::PauliX, {0}, 0}); }) == ErrorKind::Input);
    CHECK(error_kind([] { Circuit(2, {{GateKind::SingleExcitation, {0, 1}, 3}}, 2); }) ==
          ErrorKind::Input);

    // basis-state preparation and X gates
    Circuit prep(4);
    prep.add({GateKind::BasisState, {1, 3}, {}});
    prep.add({GateKind::PauliX, {0}, {}});
    CHECK(max_diff(run(prep, {}, StateVector(4)), ket("1101")) == 0.0);
    CHECK(parse_gate_kind("DoubleExcitation") == GateKind::DoubleExcitation);
    CHECK(error_kind([] { (void)parse_gate_kind("CNOT"); }) == ErrorKind::Input);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rc = random_circuit(rng, 6, 8);
        std::vector<double> theta(rc.n_parameters());
        for (auto &t : theta) {
            t = std::uniform_real_distribution<double>(-3, 3)(rng);
        }
        const auto out = run(rc, theta, prepare_hf_state(2 + 2 * (trial % 2), 6));
        CHECK_THAT(out.norm(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(particle_number(out), WithinAbs(2 + 2 * (trial % 2), 1e-12));
        const auto basis = StateVector::basis_state(6, 0b101001);
        CHECK(max_diff(run(rc, std::vector<double>(rc.n_parameters(), 0.0), basis), basis) == 0.0);
    }
}

TEST_CASE("all singles and doubles", "[circuits]") {
    const auto c = all_singles_doubles(2, 4);
    REQUIRE(c.size() == 3);
    CHECK(c.n_parameters() == 3);
    CHECK(c.gates()[0].kind == GateKind::DoubleExcitation);
    CHECK(c.gates()[0].wires == std::vector<unsigned>{0, 1, 2, 3});
    CHECK(c.gates()[1].wires == std::vector<unsigned>{0, 2});
    CHECK(c.gates()[2].wires == std::vector<unsigned>{1, 3});
    CHECK(all_singles_doubles(0, 4).size() == 0);
    CHECK(error_kind([] { (void)all_singles_doubles(3, 6); }) == ErrorKind::Input);

    // Exhaustive enumeration: subsets of occupied/virtual spin-orbitals with
    // matching size and matching alpha count.
    for (auto [ne, nq] : {std::pair{2, 6}, std::pair{4, 8}, std::pair{2, 8}}) {
        std::size_t singles = 0;
        std::size_t doubles = 0;
        const unsigned full = 1U << nq;
        for (unsigned occ = 0; occ < full; ++occ) {
            for (unsigned vir = 0; vir < full; ++vir) {
                const unsigned occ_mask = (1U << ne) - 1;
                if ((occ & ~occ_mask) != 0 || (vir & occ_mask) != 0 ||
                    std::popcount(occ) != std::popcount(vir)) {
                    continue;
                }
                const unsigned even = 0x55555555U;
                if (std::popcount(occ & even) != std::popcount(vir & even)) {
                    continue;
                }
                singles += std::popcount(occ) == 1 ? 1 : 0;
                doubles += std::popcount(occ) == 2 ? 1 : 0;
            }
        }
        const auto asd = all_singles_doubles(ne, static_cast<unsigned>(nq));
        CHECK(asd.size() == singles + doubles);
        std::size_t n_double = 0;
        for (const auto &g : asd.gates()) {
            n_double += g.kind == GateKind::DoubleExcitation ? 1 : 0;
        }
        CHECK(n_double == doubles);
        // doubles first
        for (std::size_t k = 0; k < asd.size(); ++k) {
            CHECK((asd.gates()[k].kind == GateKind::DoubleExcitation) == (k < doubles));
        }
    }
}

TEST_CASE("expectation values and overlaps", "[circuits]") {
    std::mt19937_64 rng(5);
    const auto psi = random_state(rng, 3);
    ham::PauliSum<double> id(3);
    id.add(1.0, ham::PauliWord{});
    CHECK_THAT(expectation(psi, ham::to_sparse(id)), WithinAbs(1.0, 1e-12));

    const auto qh = ham::build_qubit_hamiltonian(fixtures::h2());
    const auto h = ham::to_sparse(qh.pauli);
    CHECK_THAT(expectation(prepare_hf_state(2, 4), h),
               WithinAbs(qh.scf.electronic_energy + qh.core_constant, 1e-8));

    Eigen::SelfAdjointEigenSolver<oracle::Dense> es(oracle::to_dense(h));
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const Eigen::VectorXcd v = es.eigenvectors().col(k);
        const StateVector s(4, std::vector<cplx>(v.data(), v.data() + v.size()));
        CHECK_THAT(expectation(s, h), WithinAbs(es.eigenvalues()[k], 1e-10));
    }

    std::vector<ham::ComplexPauliTerm> skew{{{0.0, 1.0}, ham::parse_word("Z0")}};
    const auto anti = ham::to_sparse(skew, 1);
    CHECK(error_kind([&] { (void)expectation(ket("0"), anti); }) == ErrorKind::NonHermitian);
    CHECK(error_kind([&] { (void)expectation(ket("00"), anti); }) == ErrorKind::Input);

    CHECK_THAT(state_overlap(psi, psi), WithinAbs(1.0, 1e-12));
    CHECK(state_overlap(ket("10"), ket("01")) == 0.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_state(rng, 4);
        const auto b = random_state(rng, 4);
        cplx ip = 0.0;
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            ip += std::conj(a[i]) * b[i];
        }
        CHECK_THAT(state_overlap(a, b), WithinAbs(std::norm(ip), 1e-12));
    }
}

TEST_CASE("shift rule on a single excitation has the closed form", "[circuits]") {
    // G(t)|10> = cos(t/2)|10> - sin(t/2)|01>; Z0 is -1 on |10>, so <Z0> = -cos t.
    Circuit c(2);
    c.add_single(0, 1);
    ham::PauliSum<double> z(2);
    z.add(1.0, ham::parse_word("Z0"));
    const auto h = ham::to_sparse(z);
    for (double t : {0.0, 0.3, 1.7, -2.4}) {
        CHECK_THAT(expectation(run(c, {t}, ket("10")), h), WithinAbs(-std::cos(t), 1e-14));
        const auto g = parameter_shift_gradient(c, {t}, ket("10"), h);
        REQUIRE(g.size() == 1);
        CHECK_THAT(g[0], WithinAbs(std::sin(t), 1e-10));
    }
    CHECK(parameter_shift_gradient(Circuit(2), {}, ket("10"), h).empty());
}

TEST_CASE("shift rule matches finite differences", "[circuits]") {
    const auto h2 = ham::to_sparse(ham::build_qubit_hamiltonian(fixtures::h2()).pauli);
    const auto asd = all_singles_doubles(2, 4);
    const std::vector<double> theta{0.21, -0.13, 0.07};
    const auto g = parameter_shift_gradient(asd, theta, prepare_hf_state(2, 4), h2);
    const auto fd = fd_gradient(asd, theta, prepare_hf_state(2, 4), h2, 1e-6);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK_THAT(g[k], WithinAbs(fd[k], 1e-8));
    }

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const unsigned n = 2 + static_cast<unsigned>(trial % 5);
        const auto c = random_circuit(rng, n, 1 + trial % 8);
        std::vector<double> t(c.n_parameters());
        for (auto &x : t) {
            x = std::uniform_real_distribution<double>(-3, 3)(rng);
        }
        const auto init = random_state(rng, n);
        const auto h = random_hamiltonian(rng, n);
        const auto gs = parameter_shift_gradient(c, t, init, h);
        const auto gf = fd_gradient(c, t, init, h, 1e-6);
        for (std::size_t k = 0; k < gs.size(); ++k) {
            CHECK_THAT(gs[k], WithinAbs(gf[k], 1e-8));
        }
    }
}

TEST_CASE("shift-rule Hessian matches differences of the gradient", "[circuits]") {
    const auto h2 = ham::to_sparse(ham::build_qubit_hamiltonian(fixtures::h2()).pauli);
    const auto asd = all_singles_doubles(2, 4);
    const auto init = prepare_hf_state(2, 4);
    std::vector<double> theta{0.21, -0.13, 0.07};
    const auto hess = parameter_shift_hessian(asd, theta, init, h2);
    const double step = 1e-5;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        auto tp = theta;
        auto tm = theta;
        tp[j] += step;
        tm[j] -= step;
        const auto gp = parameter_shift_gradient(asd, tp, init, h2);
        const auto gm = parameter_shift_gradient(asd, tm, init, h2);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            CHECK_THAT(hess[i][j], WithinAbs((gp[i] - gm[i]) / (2 * step), 1e-7));
            CHECK_THAT(hess[i][j], WithinAbs(hess[j][i], 1e-12));
        }
    }
}

TEST_CASE("adaptive gate selection", "[circuits]") {
    const auto h2 = ham::to_sparse(ham::build_qubit_hamiltonian(fixtures::h2()).pauli);
    const auto pool = all_singles_doubles(2, 4);
    const auto hf = prepare_hf_state(2, 4);

    // Oracle: each pool gate alone, differentiated by central differences.
    std::vector<double> direct;
    for (const auto &g : pool.gates()) {
        GateOp one = g;
        one.param = 0;
        direct.push_back(fd_gradient(Circuit(4, {one}, 1), {0.0}, hf, h2, 1e-6)[0]);
    }

    AdaptiveConfig cfg;
    cfg.strategy = AdaptiveStrategy::Threshold;
    cfg.threshold = 1e-5;
    const auto b = select_gates_adaptive(pool, h2, hf, cfg);
    REQUIRE(b.pool_gradients.size() == 3);
    std::vector<std::size_t> expected;
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK_THAT(b.pool_gradients[k], WithinAbs(direct[k], 1e-8));
        if (std::abs(direct[k]) > cfg.threshold) {
            expected.push_back(k);
        }
    }
    // Singles vanish on the HF state (Brillouin), so only the double survives.
    CHECK(expected == std::vector<std::size_t>{0});
    CHECK(b.selected == expected);
    CHECK(b.circuit.size() == 1);
    CHECK(b.parameters == std::vector<double>{0.0});

    cfg.threshold = 0.0;
    const auto all = select_gates_adaptive(pool, h2, hf, cfg);
    for (std::size_t k : all.selected) {
        CHECK(all.pool_gradients[k] != 0.0);
    }
    CHECK(all.selected.size() >= b.selected.size());

    cfg.strategy = AdaptiveStrategy::LargestGradient;
    cfg.threshold = 1e-5;
    const auto a = select_gates_adaptive(pool, h2, hf, cfg);
    REQUIRE(!a.selected.empty());
    CHECK(a.selected[0] == 0);
    CHECK(a.parameters.size() == a.circuit.size());
    const double e = expectation(run(a.circuit, a.parameters, hf), h2);
    CHECK(e < expectation(hf, h2) - 1e-3);
    CHECK_THAT(e, WithinAbs(-1.1372759436, 1e-5));

    CHECK(error_kind([&] { (void)select_gates_adaptive(Circuit(4), h2, hf, cfg); }) ==
          ErrorKind::Input);
}
