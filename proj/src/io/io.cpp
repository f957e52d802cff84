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
#include "diffchem/io/io.hpp"

#include "diffchem/error.hpp"

#include <fstream>
#include <sstream>

namespace diffchem::io {

namespace {

template <class T> T get_or(const json &j, const char *key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(ErrorKind::Input, std::string("field '") + key + "': " + e.what());
    }
}

} // namespace

MoleculeSpec parse_molecule(const json &j) {
    if (!j.is_object()) {
        fail(ErrorKind::Input, "molecule file must hold a JSON object");
    }
    for (const char *key : {"symbols", "coordinates_bohr"}) {
        if (!j.contains(key)) {
            fail(ErrorKind::Input, std::string("molecule file is missing '") + key + "'");
        }
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "symbols" && key != "coordinates_bohr" && key != "charge" && key != "basis" &&
            key != "differentiate") {
            fail(ErrorKind::Input, "unknown molecule field '" + key + "'");
        }
    }
    MoleculeSpec spec;
    spec.symbols = get_or<std::vector<std::string>>(j, "symbols", {});
    const auto coords = get_or<std::vector<std::vector<double>>>(j, "coordinates_bohr", {});
    for (const auto &xyz : coords) {
        if (xyz.size() != 3) {
            fail(ErrorKind::Input, "each coordinate entry needs three components");
        }
        spec.coordinates.insert(spec.coordinates.end(), xyz.begin(), xyz.end());
    }
    spec.charge = get_or<int>(j, "charge", 0);
    spec.basis = get_or<std::string>(j, "basis", "sto-3g");
    if (j.contains("differentiate")) {
        const json &d = j.at("differentiate");
        if (!d.is_object()) {
            fail(ErrorKind::Input, "'differentiate' must be an object");
        }
        spec.differentiate.coordinates = get_or<bool>(d, "coordinates", true);
        spec.differentiate.exponents = get_or<bool>(d, "exponents", false);
        spec.differentiate.coefficients = get_or<bool>(d, "coefficients", false);
    }
    return spec;
}

MoleculeSpec parse_molecule_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::Input, std::string("molecule file is not valid JSON: ") + e.what());
    }
    return parse_molecule(j);
}

json to_json(const MoleculeSpec &spec) {
    json coords = json::array();
    for (std::size_t i = 0; i + 2 < spec.coordinates.size(); i += 3) {
        coords.push_back({spec.coordinates[i], spec.coordinates[i + 1], spec.coordinates[i + 2]});
    }
    return {{"symbols", spec.symbols},
            {"coordinates_bohr", coords},
            {"charge", spec.charge},
            {"basis", spec.basis},
            {"differentiate",
             {{"coordinates", spec.differentiate.coordinates},
              {"exponents", spec.differentiate.exponents},
              {"coefficients", spec.differentiate.coefficients}}}};
}

Molecule build(const MoleculeSpec &spec) {
    std::string name = spec.basis;
    for (auto &c : name) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (name == "sto-3g") {
        return build_molecule(spec.symbols, spec.coordinates, spec.charge, "sto-3g",
                              spec.differentiate);
    }
    const BasisLibrary lib = BasisLibrary::from_file(spec.basis);
    return build_molecule(spec.symbols, spec.coordinates, spec.charge, spec.basis,
                          spec.differentiate, &lib);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Input, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::Input, "cannot write '" + path + "'");
    }
    out << contents;
}

json circuit_to_json(const circ::Circuit &circuit) {
    json gates = json::array();
    for (const auto &g : circuit.gates()) {
        json e = {{"kind", circ::to_string(g.kind)}, {"wires", g.wires}};
        e["param"] = g.param ? json(*g.param) : json(nullptr);
        gates.push_back(e);
    }
    return {{"n_qubits", circuit.n_qubits()},
            {"gates", gates},
            {"n_parameters", circuit.n_parameters()}};
}

circ::Circuit circuit_from_json(const json &j) {
    try {
        const auto n = j.at("n_qubits").get<unsigned>();
        const auto np = j.at("n_parameters").get<std::size_t>();
        std::vector<circ::GateOp> gates;
        for (const auto &g : j.at("gates")) {
            circ::GateOp op;
            op.kind = circ::parse_gate_kind(g.at("kind").get<std::string>());
            op.wires = g.at("wires").get<std::vector<unsigned>>();
            if (g.contains("param") && !g.at("param").is_null()) {
                op.param = g.at("param").get<std::size_t>();
            }
            gates.push_back(std::move(op));
        }
        return circ::Circuit(n, std::move(gates), np);
    } catch (const json::exception &e) {
        fail(ErrorKind::Input, std::string("malformed circuit JSON: ") + e.what());
    }
}

json sparse_to_json(const ham::SparseMatrix &m) {
    json out = json::array();
    const auto &rp = m.row_ptr();
    for (std::size_t r = 0; r < m.dimension(); ++r) {
        for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
            out.push_back({r, m.col()[k], m.val()[k].real(), m.val()[k].imag()});
        }
    }
    return out;
}

ham::SparseMatrix sparse_from_json(const json &j, unsigned n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::size_t> row_ptr(dim + 1, 0);
    std::vector<std::uint32_t> col;
    std::vector<ham::cplx> val;
    std::size_t last_row = 0;
    try {
        for (const auto &e : j) {
            const auto r = e.at(0).get<std::size_t>();
            if (r >= dim || r < last_row) {
                fail(ErrorKind::Input, "sparse entries must be sorted by row and in range");
            }
            last_row = r;
            ++row_ptr[r + 1];
            col.push_back(e.at(1).get<std::uint32_t>());
            val.emplace_back(e.at(2).get<double>(), e.at(3).get<double>());
        }
    } catch (const json::exception &e) {
        fail(ErrorKind::Input, std::string("malformed sparse JSON: ") + e.what());
    }
    for (std::size_t r = 0; r < dim; ++r) {
        row_ptr[r + 1] += row_ptr[r];
    }
    return ham::SparseMatrix(n_qubits, std::move(row_ptr), std::move(col), std::move(val));
}

} // namespace diffchem::io
