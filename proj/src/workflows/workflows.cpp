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
#include "diffchem/workflows/workflows.hpp"

#include "diffchem/autodiff/derivatives.hpp"
#include "diffchem/error.hpp"
#include "diffchem/linalg/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace diffchem::wf {

namespace {

double max_abs(const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

/// Shared gradient-descent loop over a state functional.
VQEResult descend(const Circuit &circuit, const StateVector &initial, std::vector<double> theta,
                  const circ::StateFunctional &cost, const OptimizerConfig &config) {
    if (theta.size() != circuit.n_parameters()) {
        fail(ErrorKind::Input, "theta0 has length " + std::to_string(theta.size()) +
                                   ", circuit has " + std::to_string(circuit.n_parameters()) +
                                   " parameters");
    }
    if (config.step <= 0.0 || config.max_steps < 0) {
        fail(ErrorKind::Input, "optimizer step must be positive and max_steps non-negative");
    }
    VQEResult res;
    double value = cost(circ::run(circuit, theta, initial));
    const double start = value;
    res.energy_history.push_back(value);
    for (int step = 0;; ++step) {
        const auto g = circ::parameter_shift_gradient(circuit, theta, initial, cost);
        res.gradient_norm = max_abs(g);
        if (res.gradient_norm < config.tolerance) {
            res.converged = true;
            break;
        }
        if (step >= config.max_steps) {
            break;
        }
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] -= config.step * g[k];
        }
        value = cost(circ::run(circuit, theta, initial));
        res.energy_history.push_back(value);
        res.iterations = step + 1;
        if (!std::isfinite(value) || value > start + config.divergence_margin) {
            fail(ErrorKind::Divergence,
                 "optimization diverged (cost " + std::to_string(value) + " vs start " +
                     std::to_string(start) + "); try a smaller step size");
        }
    }
    res.parameters = std::move(theta);
    res.cost = value;
    return res;
}

} // namespace

VQEResult vqe_minimize(const SparseMatrix &h, const Circuit &circuit, const StateVector &initial,
                       std::vector<double> theta0, const OptimizerConfig &config) {
    const auto cost = [&h](const StateVector &s) { return circ::expectation(s, h); };
    VQEResult res = descend(circuit, initial, std::move(theta0), cost, config);
    res.energy = circ::expectation(circ::run(circuit, res.parameters, initial), h);
    return res;
}

double gershgorin_bound(const SparseMatrix &h) {
    double best = 0.0;
    const auto &rp = h.row_ptr();
    const auto &val = h.val();
    for (std::size_t r = 0; r < h.dimension(); ++r) {
        double s = 0.0;
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            s += std::abs(val[k]);
        }
        best = std::max(best, s);
    }
    return best;
}

PenaltySpec default_penalty(const SparseMatrix &h, std::vector<StateVector> states) {
    PenaltySpec p;
    p.betas.assign(states.size(), 2.0 * gershgorin_bound(h));
    p.states = std::move(states);
    return p;
}

VQEResult excited_state_minimize(const SparseMatrix &h, const Circuit &circuit,
                                 const StateVector &initial, std::vector<double> theta0,
                                 const PenaltySpec &penalty, const OptimizerConfig &config) {
    if (penalty.states.size() != penalty.betas.size()) {
        fail(ErrorKind::Input, "one beta per penalized state is required");
    }
    for (std::size_t i = 0; i < penalty.states.size(); ++i) {
        if (!(penalty.betas[i] > 0.0)) {
            fail(ErrorKind::Input, "penalty betas must be positive");
        }
        if (std::abs(penalty.states[i].norm() - 1.0) > 1e-10) {
            fail(ErrorKind::Input, "penalized states must be normalized");
        }
        if (penalty.states[i].dimension() != h.dimension()) {
            fail(ErrorKind::Input, "penalized state dimension differs from the Hamiltonian");
        }
    }
    const auto cost = [&](const StateVector &s) {
        double c = circ::expectation(s, h);
        for (std::size_t i = 0; i < penalty.states.size(); ++i) {
            c += penalty.betas[i] * circ::state_overlap(penalty.states[i], s);
        }
        return c;
    };
    VQEResult res = descend(circuit, initial, std::move(theta0), cost, config);
    res.energy = circ::expectation(circ::run(circuit, res.parameters, initial), h);
    return res;
}

MolecularProblem molecular_problem(const Molecule &molecule, const scf::ScfConfig &scf) {
    MolecularProblem p{ham::build_qubit_hamiltonian(molecule, scf), {}, {}, {}};
    const unsigned nq = p.hamiltonian.pauli.n_qubits();
    p.sparse = ham::to_sparse(p.hamiltonian.pauli);
    p.circuit = circ::all_singles_doubles(molecule.n_electrons(), nq);
    p.initial = circ::prepare_hf_state(molecule.n_electrons(), nq);
    return p;
}

std::vector<ScanPoint> pes_scan(const Molecule &molecule_template,
                                const std::vector<std::vector<double>> &geometries,
                                const ScanConfig &config) {
    if (geometries.empty()) {
        fail(ErrorKind::Input, "pes_scan needs at least one geometry");
    }
    std::vector<ScanPoint> points;
    std::vector<double> warm;
    std::size_t failures = 0;
    for (const auto &coords : geometries) {
        ScanPoint pt;
        pt.coordinates = coords;
        try {
            const Molecule mol = molecule_template.with_coordinates(coords);
            const MolecularProblem prob = molecular_problem(mol, config.scf);
            std::vector<double> theta0(prob.circuit.n_parameters(), 0.0);
            if (config.warm_start && warm.size() == theta0.size()) {
                theta0 = warm;
            }
            const VQEResult r =
                vqe_minimize(prob.sparse, prob.circuit, prob.initial, theta0, config.optimizer);
            pt.energy = r.energy;
            pt.hf_energy = prob.hamiltonian.scf.total_energy;
            pt.iterations = r.iterations;
            pt.converged = r.converged;
            pt.parameters = r.parameters;
            warm = r.parameters;
        } catch (const Error &e) {
            pt.error = std::string(to_string(e.kind())) + ": " + e.what();
            ++failures;
        }
        points.push_back(std::move(pt));
    }
    if (failures == geometries.size()) {
        fail(ErrorKind::Convergence, "every scan point failed; first error: " + points[0].error);
    }
    return points;
}

namespace {

/// Lazily evaluated <psi|P|psi> per Pauli word.
class WordExpectations {
  public:
    explicit WordExpectations(const StateVector &state) : state_(state) {}

    [[nodiscard]] unsigned n_qubits() const { return state_.n_qubits(); }

    double operator()(const ham::PauliWord &w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) {
            return it->second;
        }
        const auto v = ham::word_expectation(state_.amplitudes(), state_.n_qubits(), w);
        if (std::abs(v.imag()) > 1e-10) {
            fail(ErrorKind::InternalConsistency, "Pauli word expectation is not real");
        }
        cache_.emplace(w, v.real());
        return v.real();
    }

  private:
    const StateVector &state_;
    std::map<ham::PauliWord, double, ham::CanonicalLess> cache_;
};

/// g(x) = sum_j h_j(x) <P_j>, the state held fixed.
template <class T>
T fixed_state_energy(const Molecule &mol, const std::vector<T> &x, WordExpectations &expect,
                     const scf::ScfConfig &scf) {
    const System<T> sys = mol.lift<T>(std::span<const T>(x));
    const auto qh = ham::build_qubit_hamiltonian(sys, scf);
    if (qh.pauli.n_qubits() != expect.n_qubits()) {
        fail(ErrorKind::Input, "state has " + std::to_string(expect.n_qubits()) +
                                   " qubits, Hamiltonian needs " +
                                   std::to_string(qh.pauli.n_qubits()));
    }
    T e(0);
    for (const auto &t : qh.pauli.terms()) {
        e += t.coefficient * expect(t.word);
    }
    return e;
}

Molecule coordinates_only(const Molecule &m) {
    DiffFlags f;
    f.coordinates = true;
    return m.with_flags(f);
}

/// Derivative Hamiltonians dH/dx_k over the molecule's flagged parameters.
std::vector<ham::PauliSum<double>> hamiltonian_derivatives(const Molecule &mol,
                                                           const scf::ScfConfig &scf) {
    const std::vector<double> x0 = pack_parameters(mol).values;
    std::vector<ham::PauliSum<double>> out;
    for (std::size_t begin = 0; begin < x0.size(); begin += ad::kChunk) {
        std::vector<ad::Grad> x;
        for (std::size_t k = 0; k < x0.size(); ++k) {
            x.push_back(k >= begin && k < begin + ad::kChunk
                            ? ad::Grad::variable(x0[k], k - begin)
                            : ad::Grad(x0[k]));
        }
        const auto qh = ham::build_qubit_hamiltonian(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)), scf);
        const std::size_t width = std::min(ad::kChunk, x0.size() - begin);
        for (std::size_t s = 0; s < width; ++s) {
            ham::PauliSum<double> d(qh.pauli.n_qubits());
            for (const auto &t : qh.pauli.terms()) {
                d.add(t.coefficient.tangent(s), t.word);
            }
            out.push_back(ham::simplify(d, 0.0));
        }
    }
    return out;
}

} // namespace

HamiltonianGradient hamiltonian_gradient(const Molecule &molecule, const StateVector &state,
                                         const scf::ScfConfig &scf) {
    WordExpectations expect(state);
    const std::vector<double> x0 = pack_parameters(molecule).values;
    HamiltonianGradient out;
    out.energy = fixed_state_energy<double>(molecule, x0, expect, scf);
    out.gradient = ad::grad(
        [&](const std::vector<ad::Grad> &x) { return fixed_state_energy(molecule, x, expect, scf); },
        x0);
    return out;
}

ForceResult nuclear_forces(const Molecule &molecule, const Circuit &circuit,
                           const std::vector<double> &theta, const StateVector &initial,
                           const scf::ScfConfig &scf) {
    const Molecule mol = coordinates_only(molecule);
    const StateVector psi = circ::run(circuit, theta, initial);
    const HamiltonianGradient hg = hamiltonian_gradient(mol, psi, scf);
    ForceResult res;
    res.energy = hg.energy;
    res.forces.resize(hg.gradient.size());
    for (std::size_t k = 0; k < hg.gradient.size(); ++k) {
        res.forces[k] = -hg.gradient[k];
    }
    if (circuit.n_parameters() > 0) {
        const auto h = ham::to_sparse(ham::build_qubit_hamiltonian(mol, scf).pauli);
        res.circuit_gradient_norm =
            max_abs(circ::parameter_shift_gradient(circuit, theta, initial, h));
    }
    if (res.circuit_gradient_norm >= 1e-6) {
        res.warning = "circuit parameters are not stationary (max gradient " +
                      std::to_string(res.circuit_gradient_norm) +
                      "); Hellmann-Feynman forces are approximate";
    }
    return res;
}

JointResult joint_optimize(const Molecule &molecule, const Circuit &circuit,
                           std::vector<double> theta0, const StateVector &initial,
                           const JointConfig &config) {
    if (!config.circuit && !config.coordinates && !config.exponents && !config.coefficients) {
        fail(ErrorKind::Input, "joint_optimize needs at least one parameter class");
    }
    DiffFlags flags;
    flags.coordinates = config.coordinates;
    flags.exponents = config.exponents;
    flags.coefficients = config.coefficients;
    Molecule mol = molecule.with_flags(flags);
    JointResult res{std::move(theta0), mol, 0.0, {}, 0, false, 0.0, 0.0};
    auto &theta = res.parameters;
    if (theta.size() != circuit.n_parameters()) {
        fail(ErrorKind::Input, "theta0 length does not match the circuit");
    }

    if (!config.coordinates && !config.exponents && !config.coefficients) {
        const auto h = ham::to_sparse(ham::build_qubit_hamiltonian(mol, config.scf).pauli);
        OptimizerConfig oc;
        oc.step = config.circuit_step;
        oc.tolerance = config.tolerance;
        oc.max_steps = config.max_rounds;
        oc.divergence_margin = config.divergence_margin;
        const VQEResult v = vqe_minimize(h, circuit, initial, theta, oc);
        res.parameters = v.parameters;
        res.energy = v.energy;
        res.energy_trace = v.energy_history;
        res.rounds = v.iterations;
        res.converged = v.converged;
        res.circuit_gradient_norm = v.gradient_norm;
        return res;
    }

    const auto slots = mol.layout();
    double start = 0.0;
    for (int round = 0;; ++round) {
        auto qh = ham::build_qubit_hamiltonian(mol, config.scf);
        const auto h = ham::to_sparse(qh.pauli);
        StateVector psi = circ::run(circuit, theta, initial);
        const double e = circ::expectation(psi, h);
        if (round == 0) {
            start = e;
        } else if (!std::isfinite(e) || e > start + config.divergence_margin) {
            fail(ErrorKind::Divergence, "joint optimization diverged; try smaller steps");
        }
        res.energy = e;
        res.energy_trace.push_back(e);

        std::vector<double> g_theta;
        if (config.circuit && circuit.n_parameters() > 0) {
            g_theta = circ::parameter_shift_gradient(circuit, theta, initial, h);
        }
        const HamiltonianGradient hg = hamiltonian_gradient(mol, psi, config.scf);
        res.circuit_gradient_norm = max_abs(g_theta);
        res.hamiltonian_gradient_norm = max_abs(hg.gradient);
        res.rounds = round;
        if (res.circuit_gradient_norm < config.tolerance &&
            res.hamiltonian_gradient_norm < config.tolerance) {
            res.converged = true;
            break;
        }
        if (round >= config.max_rounds) {
            break;
        }

        if (config.circuit && circuit.n_parameters() > 0) {
            for (int k = 0; k < config.circuit_steps; ++k) {
                if (k > 0) {
                    g_theta = circ::parameter_shift_gradient(circuit, theta, initial, h);
                }
                for (std::size_t a = 0; a < theta.size(); ++a) {
                    theta[a] -= config.circuit_step * g_theta[a];
                }
            }
            psi = circ::run(circuit, theta, initial);
        }
        // Hamiltonian-parameter step uses the gradient at the round's start state.
        ParameterVector pv = pack_parameters(mol);
        for (std::size_t k = 0; k < pv.values.size(); ++k) {
            const double step = slots[k].kind == ParameterKind::Coordinate ? config.coordinate_step
                                                                           : config.basis_step;
            pv.values[k] -= step * hg.gradient[k];
        }
        mol = unpack_parameters(mol, pv);
    }
    res.molecule = mol;
    return res;
}

HessianResult energy_hessian(const Molecule &molecule, const Circuit &circuit,
                             const std::vector<double> &theta, const StateVector &initial,
                             const HessianConfig &config) {
    const Molecule mol = coordinates_only(molecule);
    const std::vector<double> r0 = mol.coordinates();
    const std::size_t nr = r0.size();
    const std::size_t nt = circuit.n_parameters();

    const auto qh = ham::build_qubit_hamiltonian(mol, config.scf);
    const auto h = ham::to_sparse(qh.pauli);
    const auto g_theta = circ::parameter_shift_gradient(circuit, theta, initial, h);
    if (max_abs(g_theta) >= config.stationarity_tolerance) {
        fail(ErrorKind::Contract, "energy_hessian needs stationary circuit parameters (max "
                                  "gradient " + std::to_string(max_abs(g_theta)) + ")");
    }

    HessianResult res;
    const StateVector psi = circ::run(circuit, theta, initial);
    WordExpectations expect(psi);
    const ad::DenseMatrix direct = ad::hessian(
        [&](const std::vector<ad::HessianScalar> &x) {
            return fixed_state_energy(mol, x, expect, config.scf);
        },
        r0);

    // b[a][j] = d/dtheta_a <dH/dR_j>
    const auto dh = hamiltonian_derivatives(mol, config.scf);
    std::vector<std::vector<double>> b(nt, std::vector<double>(nr, 0.0));
    for (std::size_t j = 0; j < nr; ++j) {
        const auto dj = ham::to_sparse(dh[j]);
        const auto g = circ::parameter_shift_gradient(circuit, theta, initial, dj);
        for (std::size_t a = 0; a < nt; ++a) {
            b[a][j] = g[a];
        }
    }

    res.circuit_hessian = circ::parameter_shift_hessian(circuit, theta, initial, h);
    linalg::Matrix<double> a_mat(nt, nt);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            a_mat(i, j) = res.circuit_hessian[i][j];
        }
    }
    // Pseudo-inverse through the symmetric eigendecomposition.
    const auto eig = linalg::symmetric_eigen(a_mat);
    res.response.assign(nt, std::vector<double>(nr, 0.0));
    for (std::size_t k = 0; k < nt; ++k) {
        const double lambda = eig.values[k];
        if (std::abs(lambda) < config.singular_cutoff) {
            res.singular = true;
            continue;
        }
        for (std::size_t j = 0; j < nr; ++j) {
            double proj = 0.0;
            for (std::size_t a = 0; a < nt; ++a) {
                proj += eig.vectors(a, k) * b[a][j];
            }
            for (std::size_t a = 0; a < nt; ++a) {
                res.response[a][j] -= eig.vectors(a, k) * proj / lambda;
            }
        }
    }
    for (std::size_t j = 0; j < nr; ++j) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t a = 0; a < nt; ++a) {
            double r = b[a][j];
            for (std::size_t c = 0; c < nt; ++c) {
                r += res.circuit_hessian[a][c] * res.response[c][j];
            }
            num += r * r;
            den += b[a][j] * b[a][j];
        }
        if (den > 0.0) {
            res.response_residual = std::max(res.response_residual, std::sqrt(num / den));
        }
    }

    std::vector<std::vector<double>> hess(nr, std::vector<double>(nr, 0.0));
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            double v = direct(i, j);
            for (std::size_t a = 0; a < nt; ++a) {
                v += res.response[a][i] * b[a][j];
            }
            hess[i][j] = v;
        }
    }
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            res.asymmetry = std::max(res.asymmetry, std::abs(hess[i][j] - hess[j][i]));
        }
    }
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = i + 1; j < nr; ++j) {
            const double m = 0.5 * (hess[i][j] + hess[j][i]);
            hess[i][j] = m;
            hess[j][i] = m;
        }
    }
    res.hessian = hess;
    const NormalModes nm = normal_modes(hess);
    res.eigenvalues = nm.frequencies_squared;
    res.modes = nm.modes;
    return res;
}

NormalModes normal_modes(const std::vector<std::vector<double>> &hessian,
                         const std::vector<double> &masses) {
    const std::size_t n = hessian.size();
    for (const auto &row : hessian) {
        if (row.size() != n) {
            fail(ErrorKind::Input, "Hessian must be square");
        }
    }
    if (!masses.empty() && masses.size() * 3 != n) {
        fail(ErrorKind::Input, "need one mass per atom (3 coordinates each)");
    }
    linalg::Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = hessian[i][j];
            if (!masses.empty()) {
                const double mi = masses[i / 3];
                const double mj = masses[j / 3];
                if (!(mi > 0.0) || !(mj > 0.0)) {
                    fail(ErrorKind::Input, "masses must be positive");
                }
                v /= std::sqrt(mi * mj);
            }
            m(i, j) = v;
        }
    }
    const auto eig = linalg::symmetric_eigen(m);
    NormalModes out;
    out.frequencies_squared = eig.values;
    out.modes.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            out.modes[k][i] = eig.vectors(i, k);
        }
        out.imaginary.push_back(eig.values[k] < 0.0);
    }
    return out;
}

} // namespace diffchem::wf
