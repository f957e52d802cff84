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

#include "diffchem/circuits/circuit.hpp"
#include "diffchem/hamiltonian/molecular.hpp"
#include "diffchem/hamiltonian/sparse.hpp"
#include "diffchem/molecule/molecule.hpp"
#include "diffchem/scf/scf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffchem::wf {

using circ::Circuit;
using circ::StateVector;
using ham::SparseMatrix;

struct OptimizerConfig {
    double step = 0.1;
    double tolerance = 1e-7; ///< on max |gradient|
    int max_steps = 500;
    double divergence_margin = 10.0; ///< hartree above the starting energy
};

struct VQEResult {
    std::vector<double> parameters;
    double energy = 0.0; ///< <H> at the final parameters
    double cost = 0.0;   ///< optimized cost (equals energy without penalties)
    int iterations = 0;
    std::vector<double> energy_history; ///< cost per step, iterations + 1 entries
    double gradient_norm = 0.0;         ///< max |gradient| at the final parameters
    bool converged = false;
};

/// Fixed-step gradient descent on <psi(theta)|H|psi(theta)> with shift-rule gradients.
VQEResult vqe_minimize(const SparseMatrix &h, const Circuit &circuit, const StateVector &initial,
                       std::vector<double> theta0, const OptimizerConfig &config = {});

struct PenaltySpec {
    std::vector<StateVector> states;
    std::vector<double> betas;
};

/// max_r sum_c |H_rc|, an upper bound on the spectral radius.
double gershgorin_bound(const SparseMatrix &h);

/// Penalizes `states` with beta = 2 * gershgorin_bound(h) each.
PenaltySpec default_penalty(const SparseMatrix &h, std::vector<StateVector> states);

/// Minimizes <H> + sum_i beta_i |<psi|psi_i>|^2.
VQEResult excited_state_minimize(const SparseMatrix &h, const Circuit &circuit,
                                 const StateVector &initial, std::vector<double> theta0,
                                 const PenaltySpec &penalty, const OptimizerConfig &config = {});

/// Hamiltonian, circuit and reference state for a molecule.
struct MolecularProblem {
    ham::QubitHamiltonian<double> hamiltonian;
    SparseMatrix sparse;
    Circuit circuit;
    StateVector initial;
};

MolecularProblem molecular_problem(const Molecule &molecule, const scf::ScfConfig &scf = {});

struct ScanPoint {
    std::vector<double> coordinates;
    std::optional<double> energy;
    std::optional<double> hf_energy;
    int iterations = 0;
    bool converged = false;
    std::vector<double> parameters;
    std::string error;
};

struct ScanConfig {
    OptimizerConfig optimizer;
    scf::ScfConfig scf;
    bool warm_start = true;
};

/// VQE over a list of geometries, warm-starting each point from the last success.
std::vector<ScanPoint> pes_scan(const Molecule &molecule_template,
                                const std::vector<std::vector<double>> &geometries,
                                const ScanConfig &config = {});

/// Energy <psi|H(x)|psi> and its gradient over the molecule's flagged
/// parameters with the state held fixed (Hellmann-Feynman form).
struct HamiltonianGradient {
    double energy = 0.0;
    std::vector<double> gradient;
};
HamiltonianGradient hamiltonian_gradient(const Molecule &molecule, const StateVector &state,
                                         const scf::ScfConfig &scf = {});

struct ForceResult {
    std::vector<double> forces; ///< -dE/dR, hartree/bohr, 3N
    double energy = 0.0;
    double circuit_gradient_norm = 0.0;
    std::string warning;
};

ForceResult nuclear_forces(const Molecule &molecule, const Circuit &circuit,
                           const std::vector<double> &theta, const StateVector &initial,
                           const scf::ScfConfig &scf = {});

struct JointConfig {
    bool circuit = true;
    bool coordinates = false;
    bool exponents = false;
    bool coefficients = false;
    int circuit_steps = 1; ///< circuit steps per round
    double circuit_step = 0.1;
    double coordinate_step = 0.05;
    double basis_step = 0.01;
    double tolerance = 1e-5;
    int max_rounds = 3000;
    double divergence_margin = 10.0;
    scf::ScfConfig scf;
};

struct JointResult {
    std::vector<double> parameters;
    Molecule molecule;
    double energy = 0.0;
    std::vector<double> energy_trace; ///< energy before each round, then final
    int rounds = 0;
    bool converged = false;
    double circuit_gradient_norm = 0.0;
    double hamiltonian_gradient_norm = 0.0;
};

JointResult joint_optimize(const Molecule &molecule, const Circuit &circuit,
                           std::vector<double> theta0, const StateVector &initial,
                           const JointConfig &config = {});

struct HessianResult {
    std::vector<std::vector<double>> hessian;  ///< symmetrized, 3N x 3N
    double asymmetry = 0.0;                    ///< max |H - H^T| before symmetrizing
    std::vector<std::vector<double>> response; ///< d theta*_a / d R_i, n_theta x 3N
    std::vector<std::vector<double>> circuit_hessian;
    double response_residual = 0.0; ///< max_i |A x_i + b_i| / |b_i|
    bool singular = false;
    std::vector<double> eigenvalues; ///< of the Hessian, ascending
    std::vector<std::vector<double>> modes;
};

struct HessianConfig {
    double stationarity_tolerance = 1e-7;
    double singular_cutoff = 1e-10;
    scf::ScfConfig scf;
};

HessianResult energy_hessian(const Molecule &molecule, const Circuit &circuit,
                             const std::vector<double> &theta, const StateVector &initial,
                             const HessianConfig &config = {});

struct NormalModes {
    std::vector<double> frequencies_squared; ///< ascending, atomic units
    std::vector<std::vector<double>> modes;  ///< modes[k] is the k-th eigenvector
    std::vector<bool> imaginary;
};

/// Eigenpairs of the Hessian, mass-weighted only when per-atom masses are given.
NormalModes normal_modes(const std::vector<std::vector<double>> &hessian,
                         const std::vector<double> &masses = {});

} // namespace diffchem::wf
