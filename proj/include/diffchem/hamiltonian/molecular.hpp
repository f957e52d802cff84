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

#include "diffchem/hamiltonian/fermion.hpp"
#include "diffchem/hamiltonian/mo_integrals.hpp"
#include "diffchem/hamiltonian/pauli.hpp"
#include "diffchem/molecule/molecule.hpp"
#include "diffchem/scf/scf.hpp"

namespace diffchem::ham {

template <class T> struct QubitHamiltonian {
    PauliSum<T> pauli; ///< includes the core constant on the identity word
    T core_constant{};
    scf::ScfResult<T> scf;
    MOIntegrals<T> mo;
};

/**
 * System -> SCF -> MO integrals -> fermionic operator -> Jordan-Wigner.
 * Differentiable end to end when T is a dual scalar.
 */
template <class T>
QubitHamiltonian<T> build_qubit_hamiltonian(const System<T> &sys,
                                            const scf::ScfConfig &config = {},
                                            double threshold = kPruneThreshold) {
    QubitHamiltonian<T> out;
    out.scf = scf::scf_solve(sys, config);
    out.mo = mo_integrals(out.scf);
    out.core_constant = out.mo.core_constant;
    out.pauli = jordan_wigner(fermionic_hamiltonian(out.mo, threshold), threshold);
    for (const auto &t : out.pauli.terms()) {
        if (!ad::all_finite(t.coefficient)) {
            fail(ErrorKind::SingularGeometry, "non-finite Hamiltonian coefficient");
        }
    }
    return out;
}

inline QubitHamiltonian<double> build_qubit_hamiltonian(const Molecule &mol,
                                                        const scf::ScfConfig &config = {},
                                                        double threshold = kPruneThreshold) {
    return build_qubit_hamiltonian(mol.system<double>(), config, threshold);
}

} // namespace diffchem::ham
