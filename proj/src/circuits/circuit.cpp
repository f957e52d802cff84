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

#include "diffchem/error.hpp"
#include "diffchem/parallel.hpp"
#include "diffchem/simd/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <set>

namespace diffchem::circ {

StateVector::StateVector(unsigned n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits > 30) {
        fail(ErrorKind::Resource, "statevector on more than 30 qubits");
    }
    amps_.assign(std::size_t{1} << n_qubits, 0.0);
    amps_[0] = 1.0;
}

StateVector::StateVector(unsigned n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        fail(ErrorKind::Input, "amplitude count does not match 2^n_qubits");
    }
}

StateVector StateVector::basis_state(unsigned n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dimension()) {
        fail(ErrorKind::Input, "basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    return std::sqrt(simd::active_kernels().norm2(amps_.size(), amps_.data()));
}

std::uint64_t StateVector::wire_bit(unsigned wire) const {
    if (wire >= n_qubits_) {
        fail(ErrorKind::Input, "wire " + std::to_string(wire) + " out of range");
    }
    return std::uint64_t{1} << (n_qubits_ - 1 - wire);
}

std::uint64_t occupation_index(unsigned n_qubits, const std::vector<unsigned> &occupied) {
    std::uint64_t idx = 0;
    for (unsigned w : occupied) {
        if (w >= n_qubits) {
            fail(ErrorKind::Input, "wire " + std::to_string(w) + " out of range");
        }
        idx |= std::uint64_t{1} << (n_qubits - 1 - w);
    }
    return idx;
}

StateVector prepare_hf_state(int n_electrons, unsigned n_qubits) {
    if (n_electrons < 0 || static_cast<unsigned>(n_electrons) > n_qubits) {
        fail(ErrorKind::Input, "cannot place " + std::to_string(n_electrons) +
                                   " electrons on " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<unsigned> occ(static_cast<std::size_t>(n_electrons));
    for (int i = 0; i < n_electrons; ++i) {
        occ[static_cast<std::size_t>(i)] = static_cast<unsigned>(i);
    }
    return StateVector::basis_state(n_qubits, occupation_index(n_qubits, occ));
}

namespace {

void check_distinct(const std::vector<unsigned> &wires, unsigned n_qubits) {
    std::set<unsigned> seen;
    for (unsigned w : wires) {
        if (w >= n_qubits) {
            fail(ErrorKind::Input, "wire " + std::to_string(w) + " out of range for " +
                                       std::to_string(n_qubits) + " qubits");
        }
        if (!seen.insert(w).second) {
            fail(ErrorKind::Input, "repeated wire " + std::to_string(w));
        }
    }
}

} // namespace

void apply_single_excitation(StateVector &state, double theta, unsigned p, unsigned q) {
    check_distinct({p, q}, state.n_qubits());
    const std::uint64_t bp = state.wire_bit(p);
    const std::uint64_t bq = state.wire_bit(q);
    simd::active_kernels().givens(state.amplitudes().data(), state.n_qubits(), bp | bq, bq,
                                  bp | bq, std::cos(theta / 2), std::sin(theta / 2));
}

void apply_double_excitation(StateVector &state, double theta, unsigned p, unsigned q,
                             unsigned r, unsigned s) {
    check_distinct({p, q, r, s}, state.n_qubits());
    const std::uint64_t lo = state.wire_bit(p) | state.wire_bit(q);
    const std::uint64_t hi = state.wire_bit(r) | state.wire_bit(s);
    simd::active_kernels().givens(state.amplitudes().data(), state.n_qubits(), lo | hi, hi,
                                  lo | hi, std::cos(theta / 2), std::sin(theta / 2));
}

void apply_pauli_x(StateVector &state, unsigned wire) {
    const std::uint64_t b = state.wire_bit(wire);
    auto &a = state.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if ((i & b) == 0) {
            std::swap(a[i], a[i | b]);
        }
    }
}

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::BasisState: return "BasisState";
    case GateKind::PauliX: return "PauliX";
    case GateKind::SingleExcitation: return "SingleExcitation";
    case GateKind::DoubleExcitation: return "DoubleExcitation";
    }
    return "?";
}

GateKind parse_gate_kind(const std::string &name) {
    for (GateKind k : {GateKind::BasisState, GateKind::PauliX, GateKind::SingleExcitation,
                       GateKind::DoubleExcitation}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    fail(ErrorKind::Input, "unknown gate kind '" + name + "'");
}

namespace {
bool parametrized(GateKind k) {
    return k == GateKind::SingleExcitation || k == GateKind::DoubleExcitation;
}
} // namespace

Circuit::Circuit(unsigned n_qubits, std::vector<GateOp> gates, std::size_t n_parameters)
    : n_qubits_(n_qubits), n_parameters_(n_parameters) {
    for (auto &g : gates) {
        if (parametrized(g.kind) && !g.param) {
            fail(ErrorKind::Input, "parametrized gate without a parameter slot");
        }
        validate(g);
        gates_.push_back(std::move(g));
    }
}

void Circuit::validate(const GateOp &g) const {
    std::size_t expected = 0;
    switch (g.kind) {
    case GateKind::BasisState: expected = g.wires.size(); break;
    case GateKind::PauliX: expected = 1; break;
    case GateKind::SingleExcitation: expected = 2; break;
    case GateKind::DoubleExcitation: expected = 4; break;
    }
    if (g.wires.size() != expected) {
        fail(ErrorKind::Input, to_string(g.kind) + " needs " + std::to_string(expected) +
                                   " wires, got " + std::to_string(g.wires.size()));
    }
    check_distinct(g.wires, n_qubits_);
    if (g.param && *g.param >= n_parameters_) {
        fail(ErrorKind::Input, "parameter slot " + std::to_string(*g.param) +
                                   " >= n_parameters " + std::to_string(n_parameters_));
    }
    if (!parametrized(g.kind) && g.param) {
        fail(ErrorKind::Input, to_string(g.kind) + " takes no parameter");
    }
}

std::size_t Circuit::add(GateOp gate) {
    if (parametrized(gate.kind) && !gate.param) {
        gate.param = n_parameters_++;
    } else if (gate.param) {
        n_parameters_ = std::max(n_parameters_, *gate.param + 1);
    }
    validate(gate);
    gates_.push_back(gate);
    return gate.param.value_or(0);
}

std::size_t Circuit::add_single(unsigned p, unsigned q) {
    return add({GateKind::SingleExcitation, {p, q}, std::nullopt});
}

std::size_t Circuit::add_double(unsigned p, unsigned q, unsigned r, unsigned s) {
    return add({GateKind::DoubleExcitation, {p, q, r, s}, std::nullopt});
}

void apply_gate(StateVector &state, const GateOp &g, double theta) {
    const auto &w = g.wires;
    switch (g.kind) {
    case GateKind::BasisState:
        state = StateVector::basis_state(state.n_qubits(), occupation_index(state.n_qubits(), w));
        break;
    case GateKind::PauliX: apply_pauli_x(state, w[0]); break;
    case GateKind::SingleExcitation: apply_single_excitation(state, theta, w[0], w[1]); break;
    case GateKind::DoubleExcitation:
        apply_double_excitation(state, theta, w[0], w[1], w[2], w[3]);
        break;
    }
}

namespace {

StateVector run_offsets(const Circuit &circuit, const std::vector<double> &parameters,
                        const StateVector &initial, const std::vector<double> *offsets) {
    StateVector s = initial;
    for (std::size_t k = 0; k < circuit.gates().size(); ++k) {
        const auto &g = circuit.gates()[k];
        double theta = g.param ? parameters[*g.param] : 0.0;
        if (offsets != nullptr) {
            theta += (*offsets)[k];
        }
        apply_gate(s, g, theta);
    }
    return s;
}

void check_run_inputs(const Circuit &circuit, const std::vector<double> &parameters,
                      const StateVector &initial) {
    if (parameters.size() != circuit.n_parameters()) {
        fail(ErrorKind::Input, "circuit expects " + std::to_string(circuit.n_parameters()) +
                                   " parameters, got " + std::to_string(parameters.size()));
    }
    if (initial.n_qubits() != circuit.n_qubits()) {
        fail(ErrorKind::Input, "initial state qubit count does not match the circuit");
    }
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

StateVector run(const Circuit &circuit, const std::vector<double> &parameters,
                const StateVector &initial) {
    check_run_inputs(circuit, parameters, initial);
    return run_offsets(circuit, parameters, initial, nullptr);
}

double expectation(const StateVector &state, const ham::SparseMatrix &h) {
    if (h.dimension() != state.dimension()) {
        fail(ErrorKind::Input, "Hamiltonian and state dimensions differ");
    }
    const cplx e = h.expectation(state.amplitudes());
    if (std::abs(e.imag()) >= 1e-10) {
        fail(ErrorKind::NonHermitian,
             "expectation has imaginary part " + std::to_string(e.imag()));
    }
    return e.real();
}

double state_overlap(const StateVector &psi, const StateVector &phi) {
    if (psi.dimension() != phi.dimension()) {
        fail(ErrorKind::Input, "state dimensions differ");
    }
    const cplx ip = simd::active_kernels().inner(psi.dimension(), psi.amplitudes().data(),
                                                 phi.amplitudes().data());
    return std::min(1.0, std::norm(ip));
}

double particle_number(const StateVector &state) {
    double n = 0.0;
    const auto &a = state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += std::norm(a[i]) * std::popcount(i);
    }
    return n;
}

Circuit all_singles_doubles(int n_electrons, unsigned n_qubits) {
    if (n_electrons < 0 || n_electrons % 2 != 0) {
        fail(ErrorKind::Input, "all_singles_doubles needs an even electron count");
    }
    if (static_cast<unsigned>(n_electrons) > n_qubits) {
        fail(ErrorKind::Input, "more electrons than qubits");
    }
    const auto ne = static_cast<unsigned>(n_electrons);
    Circuit c(n_qubits);
    auto spin = [](unsigned k) { return k % 2; };
    for (unsigned i = 0; i < ne; ++i) {
        for (unsigned j = i + 1; j < ne; ++j) {
            for (unsigned a = ne; a < n_qubits; ++a) {
                for (unsigned b = a + 1; b < n_qubits; ++b) {
                    if (spin(i) + spin(j) == spin(a) + spin(b)) {
                        c.add_double(i, j, a, b);
                    }
                }
            }
        }
    }
    for (unsigned i = 0; i < ne; ++i) {
        for (unsigned a = ne; a < n_qubits; ++a) {
            if (spin(i) == spin(a)) {
                c.add_single(i, a);
            }
        }
    }
    return c;
}

std::vector<double> parameter_shift_gradient(const Circuit &circuit,
                                             const std::vector<double> &parameters,
                                             const StateVector &initial,
                                             const StateFunctional &cost) {
    check_run_inputs(circuit, parameters, initial);
    const auto &gates = circuit.gates();
    std::vector<std::size_t> shiftable;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (gates[k].param) {
            if (!parametrized(gates[k].kind)) {
                fail(ErrorKind::UnsupportedGradient,
                     "no shift rule for " + to_string(gates[k].kind));
            }
            shiftable.push_back(k);
        }
    }
    static constexpr std::array<double, 4> kShifts = {kPi / 2, -kPi / 2, 3 * kPi / 2,
                                                      -3 * kPi / 2};
    const std::array<double, 4> weights = {kShiftPlus, -kShiftPlus, -kShiftMinus, kShiftMinus};
    std::vector<double> terms(shiftable.size() * 4);
    parallel_for(terms.size(), [&](std::size_t idx) {
        std::vector<double> offsets(gates.size(), 0.0);
        offsets[shiftable[idx / 4]] = kShifts[idx % 4];
        terms[idx] = weights[idx % 4] * cost(run_offsets(circuit, parameters, initial, &offsets));
    });
    std::vector<double> g(circuit.n_parameters(), 0.0);
    for (std::size_t i = 0; i < shiftable.size(); ++i) {
        double d = 0.0;
        for (std::size_t t = 0; t < 4; ++t) {
            d += terms[i * 4 + t];
        }
        g[*gates[shiftable[i]].param] += d;
    }
    return g;
}

std::vector<double> parameter_shift_gradient(const Circuit &circuit,
                                             const std::vector<double> &parameters,
                                             const StateVector &initial,
                                             const ham::SparseMatrix &h) {
    return parameter_shift_gradient(circuit, parameters, initial,
                                    [&h](const StateVector &s) { return expectation(s, h); });
}

std::vector<std::vector<double>> parameter_shift_hessian(const Circuit &circuit,
                                                         const std::vector<double> &parameters,
                                                         const StateVector &initial,
                                                         const ham::SparseMatrix &h) {
    check_run_inputs(circuit, parameters, initial);
    const auto &gates = circuit.gates();
    std::vector<std::size_t> shiftable;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (gates[k].param) {
            if (!parametrized(gates[k].kind)) {
                fail(ErrorKind::UnsupportedGradient,
                     "no shift rule for " + to_string(gates[k].kind));
            }
            shiftable.push_back(k);
        }
    }
    static constexpr std::array<double, 4> kShifts = {kPi / 2, -kPi / 2, 3 * kPi / 2,
                                                      -3 * kPi / 2};
    const std::array<double, 4> weights = {kShiftPlus, -kShiftPlus, -kShiftMinus, kShiftMinus};
    const std::size_t ns = shiftable.size();
    // Pair (i, j) with i <= j; the 16 doubly shifted evaluations per pair.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = i; j < ns; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::vector<double> pair_value(pairs.size(), 0.0);
    parallel_for(pairs.size(), [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        double acc = 0.0;
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                std::vector<double> offsets(gates.size(), 0.0);
                offsets[shiftable[i]] += kShifts[a];
                offsets[shiftable[j]] += kShifts[b];
                acc += weights[a] * weights[b] *
                       expectation(run_offsets(circuit, parameters, initial, &offsets), h);
            }
        }
        pair_value[idx] = acc;
    });
    const std::size_t np = circuit.n_parameters();
    std::vector<std::vector<double>> hess(np, std::vector<double>(np, 0.0));
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto [i, j] = pairs[idx];
        const std::size_t a = *gates[shiftable[i]].param;
        const std::size_t b = *gates[shiftable[j]].param;
        hess[a][b] += pair_value[idx];
        if (i != j) {
            hess[b][a] += pair_value[idx];
        }
    }
    return hess;
}

namespace {

/// Gradient of each pool gate appended to `state` at angle zero.
std::vector<double> pool_gradients(const Circuit &pool, const ham::SparseMatrix &h,
                                   const StateVector &state) {
    std::vector<double> out(pool.gates().size(), 0.0);
    for (std::size_t k = 0; k < pool.gates().size(); ++k) {
        GateOp g = pool.gates()[k];
        if (!parametrized(g.kind)) {
            continue;
        }
        g.param = 0;
        const Circuit one(pool.n_qubits(), {g}, 1);
        out[k] = parameter_shift_gradient(one, {0.0}, state, h)[0];
    }
    return out;
}

} // namespace

AdaptiveResult select_gates_adaptive(const Circuit &pool, const ham::SparseMatrix &h,
                                     const StateVector &initial, const AdaptiveConfig &config) {
    if (pool.gates().empty()) {
        fail(ErrorKind::Input, "adaptive selection needs a non-empty gate pool");
    }
    if (config.threshold < 0.0) {
        fail(ErrorKind::Input, "adaptive threshold must be non-negative");
    }
    AdaptiveResult res;
    res.circuit = Circuit(pool.n_qubits());
    res.pool_gradients = pool_gradients(pool, h, initial);

    if (config.strategy == AdaptiveStrategy::Threshold) {
        for (std::size_t k = 0; k < pool.gates().size(); ++k) {
            if (std::abs(res.pool_gradients[k]) > config.threshold) {
                GateOp g = pool.gates()[k];
                g.param.reset();
                res.circuit.add(g);
                res.selected.push_back(k);
            }
        }
        res.parameters.assign(res.circuit.n_parameters(), 0.0);
        return res;
    }

    std::vector<double> grads = res.pool_gradients;
    StateVector state = initial;
    for (int round = 0; round < config.max_rounds; ++round) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < grads.size(); ++k) {
            if (std::abs(grads[k]) > std::abs(grads[best])) {
                best = k;
            }
        }
        if (std::abs(grads[best]) < config.threshold || grads[best] == 0.0) {
            break;
        }
        GateOp g = pool.gates()[best];
        g.param = 0;
        const Circuit one(pool.n_qubits(), {g}, 1);
        std::vector<double> theta{0.0};
        for (int step = 0; step < config.inner_steps; ++step) {
            theta[0] -= config.inner_step * parameter_shift_gradient(one, theta, state, h)[0];
        }
        state = run(one, theta, state);
        g.param.reset();
        res.circuit.add(g);
        res.parameters.push_back(theta[0]);
        res.selected.push_back(best);
        grads = pool_gradients(pool, h, state);
    }
    return res;
}

} // namespace diffchem::circ
