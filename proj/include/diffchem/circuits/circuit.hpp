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

#include "diffchem/hamiltonian/sparse.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diffchem::circ {

using cplx = std::complex<double>;

/**
 * Normalized amplitudes over 2^n basis states. Qubit 0 is the most
 * significant bit of the basis index; bit value 1 means the spin-orbital is
 * occupied.
 */
class StateVector {
  public:
    StateVector() = default;
    /// |0...0>
    explicit StateVector(unsigned n_qubits);
    StateVector(unsigned n_qubits, std::vector<cplx> amplitudes);

    static StateVector basis_state(unsigned n_qubits, std::uint64_t index);

    [[nodiscard]] unsigned n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const { return amps_; }
    std::vector<cplx> &amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const;
    /// Amplitude-index bit for a wire.
    [[nodiscard]] std::uint64_t wire_bit(unsigned wire) const;

  private:
    unsigned n_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// Basis index with the listed wires occupied.
std::uint64_t occupation_index(unsigned n_qubits, const std::vector<unsigned> &occupied);

/// |1...10...0> with the first n_electrons qubits occupied.
StateVector prepare_hf_state(int n_electrons, unsigned n_qubits);

/// In the (p, q) subspace: |01> -> c|01> + s|10>, |10> -> c|10> - s|01>,
/// with c = cos(theta/2), s = sin(theta/2).
void apply_single_excitation(StateVector &state, double theta, unsigned p, unsigned q);

/// |0011> -> c|0011> + s|1100>, |1100> -> c|1100> - s|0011> on wires
/// (p, q, r, s); identity on the other fourteen patterns.
void apply_double_excitation(StateVector &state, double theta, unsigned p, unsigned q,
                             unsigned r, unsigned s);

void apply_pauli_x(StateVector &state, unsigned wire);

enum class GateKind { BasisState, PauliX, SingleExcitation, DoubleExcitation };

std::string to_string(GateKind kind);
GateKind parse_gate_kind(const std::string &name);

/// BasisState resets the register to the basis state with `wires` occupied.
struct GateOp {
    GateKind kind = GateKind::PauliX;
    std::vector<unsigned> wires;
    std::optional<std::size_t> param;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(unsigned n_qubits) : n_qubits_(n_qubits) {}
    Circuit(unsigned n_qubits, std::vector<GateOp> gates, std::size_t n_parameters);

    /// Appends a gate; a parametrized gate without a slot gets a new one.
    std::size_t add(GateOp gate);
    std::size_t add_single(unsigned p, unsigned q);
    std::size_t add_double(unsigned p, unsigned q, unsigned r, unsigned s);

    [[nodiscard]] unsigned n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<GateOp> &gates() const { return gates_; }
    [[nodiscard]] std::size_t n_parameters() const { return n_parameters_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }

  private:
    void validate(const GateOp &gate) const;

    unsigned n_qubits_ = 0;
    std::vector<GateOp> gates_;
    std::size_t n_parameters_ = 0;
};

void apply_gate(StateVector &state, const GateOp &gate, double theta);

StateVector run(const Circuit &circuit, const std::vector<double> &parameters,
                const StateVector &initial);

/// Real <psi|H|psi>; imaginary residue >= 1e-10 raises a non-Hermitian error.
double expectation(const StateVector &state, const ham::SparseMatrix &h);

/// |<psi|phi>|^2
double state_overlap(const StateVector &psi, const StateVector &phi);

/// Expected particle number sum_k <n_k>.
double particle_number(const StateVector &state);

/**
 * All spin-conserving excitations from the first n_electrons spin-orbitals
 * (interleaved alpha/beta): doubles first in ascending (occupied pair,
 * virtual pair) order, then singles in ascending (occupied, virtual) order.
 */
Circuit all_singles_doubles(int n_electrons, unsigned n_qubits);

/// Cost functional of the final state; must be a quadratic form <psi|A|psi>
/// for the shift rule to be exact.
using StateFunctional = std::function<double(const StateVector &)>;

/// Four-term shift rule coefficients for generators with spectrum {-1/2, 0, 1/2}.
inline const double kShiftPlus = (std::sqrt(2.0) + 1.0) / (4.0 * std::sqrt(2.0));
inline const double kShiftMinus = (std::sqrt(2.0) - 1.0) / (4.0 * std::sqrt(2.0));

std::vector<double> parameter_shift_gradient(const Circuit &circuit,
                                             const std::vector<double> &parameters,
                                             const StateVector &initial,
                                             const StateFunctional &cost);
std::vector<double> parameter_shift_gradient(const Circuit &circuit,
                                             const std::vector<double> &parameters,
                                             const StateVector &initial,
                                             const ham::SparseMatrix &h);

/// Jacobian of the shift-rule gradient (shift rule applied twice); symmetric.
std::vector<std::vector<double>> parameter_shift_hessian(const Circuit &circuit,
                                                         const std::vector<double> &parameters,
                                                         const StateVector &initial,
                                                         const ham::SparseMatrix &h);

enum class AdaptiveStrategy {
    LargestGradient, ///< A: iteratively append the argmax-gradient gate
    Threshold        ///< B: keep every gate whose gradient exceeds a threshold
};

struct AdaptiveConfig {
    AdaptiveStrategy strategy = AdaptiveStrategy::Threshold;
    double threshold = 1e-5;
    int max_rounds = 10;
    int inner_steps = 50;
    double inner_step = 0.1;
};

struct AdaptiveResult {
    Circuit circuit;
    std::vector<double> parameters;     ///< frozen values (A) or zeros (B)
    std::vector<double> pool_gradients; ///< first-round gradients, pool order
    std::vector<std::size_t> selected;  ///< pool indices in selection order
};

AdaptiveResult select_gates_adaptive(const Circuit &pool, const ham::SparseMatrix &h,
                                     const StateVector &initial, const AdaptiveConfig &config);

} // namespace diffchem::circ
