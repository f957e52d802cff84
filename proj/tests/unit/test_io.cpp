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
#include "diffchem/hamiltonian/molecular.hpp"
#include "diffchem/io/io.hpp"
#include "support/fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>

using namespace diffchem;
using fixtures::error_kind;
using io::json;

namespace {

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "diffchem_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("molecule JSON parses with defaults", "[io]") {
    const auto spec = io::parse_molecule_text(
        R"({"symbols":["H","H"],"coordinates_bohr":[[0,0,0],[0,0,1.4]]})");
    CHECK(spec.symbols == std::vector<std::string>{"H", "H"});
    CHECK(spec.coordinates == std::vector<double>{0, 0, 0, 0, 0, 1.4});
    CHECK(spec.charge == 0);
    CHECK(spec.basis == "sto-3g");
    CHECK(spec.differentiate.coordinates);
    CHECK(!spec.differentiate.exponents);
    const auto mol = io::build(spec);
    CHECK(mol.n_electrons() == 2);
    CHECK(mol.n_basis() == 2);
}

TEST_CASE("molecule JSON round trip", "[io]") {
    io::MoleculeSpec spec;
    spec.symbols = {"He", "H"};
    spec.coordinates = {0.1, -0.2, 0.3, 0.0, 0.0, 1.4632};
    spec.charge = 1;
    spec.differentiate = {false, true, true};
    const auto text = io::to_json(spec).dump();
    const auto back = io::parse_molecule_text(text);
    CHECK(back.symbols == spec.symbols);
    CHECK(back.coordinates == spec.coordinates);
    CHECK(back.charge == spec.charge);
    CHECK(back.basis == spec.basis);
    CHECK(back.differentiate.coordinates == false);
    CHECK(back.differentiate.exponents == true);
    CHECK(back.differentiate.coefficients == true);
    CHECK(io::to_json(back).dump() == text);
}

TEST_CASE("malformed molecule files are rejected", "[io]") {
    auto kind = [](const std::string &text) {
        return error_kind([&] { (void)io::parse_molecule_text(text); });
    };
    CHECK(kind("not json") == ErrorKind::Input);
    CHECK(kind("[1,2]") == ErrorKind::Input);
    CHECK(kind(R"({"symbols":["H"]})") == ErrorKind::Input);
    CHECK(kind(R"({"symbols":["H"],"coordinates_bohr":[[0,0,0]],"spin":1})") == ErrorKind::Input);
    CHECK(kind(R"({"symbols":["H"],"coordinates_bohr":[[0,0]]})") == ErrorKind::Input);
    CHECK(kind(R"({"symbols":"H","coordinates_bohr":[[0,0,0]]})") == ErrorKind::Input);
    CHECK(kind(R"({"symbols":["H"],"coordinates_bohr":[[0,0,0]],"differentiate":3})") ==
          ErrorKind::Input);
    // parses, but the molecule itself is invalid
    const auto odd = io::parse_molecule_text(R"({"symbols":["H"],"coordinates_bohr":[[0,0,0]]})");
    CHECK(error_kind([&] { (void)io::build(odd); }) == ErrorKind::ClosedShellViolation);
}

TEST_CASE("basis file named in the molecule is loaded", "[io]") {
    const auto path = scratch("two_s.basis");
    io::write_file(path.string(), "element H\nshell s\n1.0 1.0\nshell s\n0.2 1.0\n");
    io::MoleculeSpec spec;
    spec.symbols = {"H", "H"};
    spec.coordinates = {0, 0, 0, 0, 0, 1.4};
    spec.basis = path.string();
    CHECK(io::build(spec).n_basis() == 4);
    spec.basis = scratch("missing.basis").string();
    CHECK(error_kind([&] { (void)io::build(spec); }) == ErrorKind::Input);
}

TEST_CASE("file helpers", "[io]") {
    const auto path = scratch("note.txt");
    io::write_file(path.string(), "hello\nworld\n");
    CHECK(io::read_file(path.string()) == "hello\nworld\n");
    CHECK(error_kind([] { (void)io::read_file("/nonexistent/dir/file"); }) == ErrorKind::Input);
}

TEST_CASE("circuit JSON round trip", "[io]") {
    circ::Circuit c(6);
    c.add({circ::GateKind::BasisState, {0, 1}, {}});
    c.add({circ::GateKind::PauliX, {4}, {}});
    c.add_double(0, 1, 2, 3);
    c.add_single(1, 5);
    c.add({circ::GateKind::SingleExcitation, {0, 2}, 0});
    const auto j = io::circuit_to_json(c);
    CHECK(j["gates"][0]["param"].is_null());
    CHECK(j["gates"][2]["kind"] == "DoubleExcitation");
    const auto back = io::circuit_from_json(json::parse(j.dump()));
    CHECK(back.n_qubits() == 6);
    CHECK(back.n_parameters() == c.n_parameters());
    REQUIRE(back.size() == c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        CHECK(back.gates()[k].kind == c.gates()[k].kind);
        CHECK(back.gates()[k].wires == c.gates()[k].wires);
        CHECK(back.gates()[k].param == c.gates()[k].param);
    }
    CHECK(io::circuit_to_json(back).dump() == j.dump());

    CHECK(error_kind([] { (void)io::circuit_from_json(json::parse(R"({"n_qubits":2})")); }) ==
          ErrorKind::Input);
    CHECK(error_kind([] {
              (void)io::circuit_from_json(json::parse(
                  R"({"n_qubits":2,"n_parameters":0,"gates":[{"kind":"Toffoli","wires":[0]}]})"));
          }) == ErrorKind::Input);
    CHECK(error_kind([] {
              (void)io::circuit_from_json(json::parse(
                  R"({"n_qubits":2,"n_parameters":1,"gates":[{"kind":"SingleExcitation","wires":[0,2],"param":0}]})"));
          }) == ErrorKind::Input);
}

TEST_CASE("sparse matrix JSON round trip", "[io]") {
    const auto h = ham::to_sparse(ham::build_qubit_hamiltonian(fixtures::h2()).pauli);
    const auto j = io::sparse_to_json(h);
    REQUIRE(j.size() == h.nnz());
    CHECK(j[0].size() == 4);
    const auto back = io::sparse_from_json(json::parse(j.dump()), 4);
    CHECK(back.row_ptr() == h.row_ptr());
    CHECK(back.col() == h.col());
    CHECK(back.val() == h.val());
    CHECK(error_kind([] { (void)io::sparse_from_json(json::parse("[[1,0,1,0],[0,0,1,0]]"), 1); }) ==
          ErrorKind::Input);
    CHECK(error_kind([] { (void)io::sparse_from_json(json::parse("[[0,0,\"x\",0]]"), 1); }) ==
          ErrorKind::Input);
}
