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
#include "diffchem/hamiltonian/sparse.hpp"
#include "diffchem/molecule/molecule.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace diffchem::io {

using json = nlohmann::ordered_json;

/// Parsed molecule input file.
struct MoleculeSpec {
    std::vector<std::string> symbols;
    std::vector<double> coordinates; ///< flat, bohr
    int charge = 0;
    std::string basis = "sto-3g"; ///< "sto-3g" or a path to a basis text file
    DiffFlags differentiate{true, false, false};
};

MoleculeSpec parse_molecule(const json &j);
MoleculeSpec parse_molecule_text(const std::string &text);
json to_json(const MoleculeSpec &spec);
Molecule build(const MoleculeSpec &spec);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

json circuit_to_json(const circ::Circuit &circuit);
circ::Circuit circuit_from_json(const json &j);

/// [[row, col, re, im], ...]
json sparse_to_json(const ham::SparseMatrix &m);
ham::SparseMatrix sparse_from_json(const json &j, unsigned n_qubits);

} // namespace diffchem::io
