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
#include "diffchem/molecule/molecule.hpp"

#include <cmath>

namespace diffchem {

namespace {

std::vector<AngularMomentum> cartesian_components(int l) {
    std::vector<AngularMomentum> out;
    for (int i = l; i >= 0; --i) {
        for (int j = l - i; j >= 0; --j) {
            out.push_back({i, j, l - i - j});
        }
    }
    return out;
}

ContractedGaussian<double> make_function(const AngularMomentum &lmn,
                                         const std::vector<double> &exponents,
                                         const std::vector<double> &coefficients) {
    ContractedGaussian<double> g;
    g.lmn = lmn;
    g.exponents = exponents;
    g.coefficients = coefficients;
    return g;
}

} // namespace

std::vector<ContractedGaussian<double>> load_basis(const BasisLibrary &library,
                                                   const std::string &symbol) {
    std::vector<ContractedGaussian<double>> out;
    for (const auto &shell : library.shells(symbol)) {
        if (shell.type == ShellType::S || shell.type == ShellType::SP) {
            out.push_back(make_function({0, 0, 0}, shell.exponents, shell.coefficients));
        }
        if (shell.type == ShellType::P || shell.type == ShellType::SP) {
            const auto &coefs =
                shell.type == ShellType::SP ? shell.coefficients_p : shell.coefficients;
            for (const auto &lmn : cartesian_components(1)) {
                out.push_back(make_function(lmn, shell.exponents, coefs));
            }
        }
    }
    return out;
}

std::vector<ContractedGaussian<double>> load_sto3g(const std::string &symbol) {
    return load_basis(sto3g_library(), symbol);
}

Molecule::Molecule(std::vector<Atom> atoms, int charge,
                   std::vector<ContractedGaussian<double>> basis, DiffFlags flags)
    : atoms_(std::move(atoms)), charge_(charge), basis_(std::move(basis)), flags_(flags) {
    if (atoms_.empty()) {
        fail(ErrorKind::Input, "molecule has no atoms");
    }
    int total_z = 0;
    for (const auto &a : atoms_) {
        if (a.atomic_number < 1) {
            fail(ErrorKind::Input, "atomic number must be >= 1");
        }
        for (double c : a.position) {
            if (!std::isfinite(c)) {
                fail(ErrorKind::Input, "atom position is not finite");
            }
        }
        total_z += a.atomic_number;
    }
    n_electrons_ = total_z - charge_;
    if (n_electrons_ < 0) {
        fail(ErrorKind::Input, "charge exceeds total nuclear charge");
    }
    if (n_electrons_ % 2 != 0) {
        fail(ErrorKind::ClosedShellViolation,
             "odd electron count " + std::to_string(n_electrons_) +
                 "; only closed-shell molecules are supported");
    }
    if (basis_.empty()) {
        fail(ErrorKind::Input, "molecule has no basis functions");
    }
    for (auto &bf : basis_) {
        if (bf.atom >= atoms_.size()) {
            fail(ErrorKind::Input, "basis function refers to a missing atom");
        }
        if (bf.exponents.empty() || bf.exponents.size() != bf.coefficients.size()) {
            fail(ErrorKind::Input, "basis function has inconsistent primitive data");
        }
        for (int c : bf.lmn) {
            if (c < 0) {
                fail(ErrorKind::Input, "negative angular momentum component");
            }
        }
        for (double e : bf.exponents) {
            if (!(e > 0.0)) {
                fail(ErrorKind::Domain, "Gaussian exponent must be positive");
            }
        }
        bf.center = atoms_[bf.atom].position;
    }
}

Molecule Molecule::with_flags(DiffFlags flags) const {
    Molecule m = *this;
    m.flags_ = flags;
    return m;
}

Molecule Molecule::with_coordinates(std::span<const double> coords) const {
    if (coords.size() != 3 * atoms_.size()) {
        fail(ErrorKind::Layout, "coordinate vector must have length 3N");
    }
    auto atoms = atoms_;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            atoms[i].position[k] = coords[3 * i + k];
        }
    }
    return Molecule(std::move(atoms), charge_, basis_, flags_);
}

std::vector<double> Molecule::coordinates() const {
    std::vector<double> out;
    out.reserve(3 * atoms_.size());
    for (const auto &a : atoms_) {
        out.insert(out.end(), a.position.begin(), a.position.end());
    }
    return out;
}

std::vector<ParameterSlot> Molecule::layout() const {
    std::vector<ParameterSlot> out;
    if (flags_.coordinates) {
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            for (std::size_t k = 0; k < 3; ++k) {
                out.push_back({ParameterKind::Coordinate, i, k});
            }
        }
    }
    if (flags_.exponents) {
        for (std::size_t f = 0; f < basis_.size(); ++f) {
            for (std::size_t k = 0; k < basis_[f].size(); ++k) {
                out.push_back({ParameterKind::Exponent, f, k});
            }
        }
    }
    if (flags_.coefficients) {
        for (std::size_t f = 0; f < basis_.size(); ++f) {
            for (std::size_t k = 0; k < basis_[f].size(); ++k) {
                out.push_back({ParameterKind::Coefficient, f, k});
            }
        }
    }
    return out;
}

Molecule build_molecule(const std::vector<std::string> &symbols,
                        std::span<const double> coordinates, int charge,
                        const std::string &basis_name, DiffFlags flags,
                        const BasisLibrary *library) {
    if (symbols.size() * 3 != coordinates.size()) {
        fail(ErrorKind::Input, "symbols and coordinates differ in length (" +
                                   std::to_string(symbols.size()) + " atoms, " +
                                   std::to_string(coordinates.size()) + " coordinates)");
    }
    if (library == nullptr) {
        if (basis_name != "sto-3g" && basis_name != "STO-3G") {
            fail(ErrorKind::Input, "unknown basis '" + basis_name + "'");
        }
        library = &sto3g_library();
    }
    std::vector<Atom> atoms;
    std::vector<ContractedGaussian<double>> basis;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        Atom a;
        a.symbol = symbols[i];
        a.atomic_number = atomic_number(symbols[i]);
        a.position = {coordinates[3 * i], coordinates[3 * i + 1], coordinates[3 * i + 2]};
        atoms.push_back(a);
        for (auto bf : load_basis(*library, symbols[i])) {
            bf.atom = i;
            basis.push_back(std::move(bf));
        }
    }
    return Molecule(std::move(atoms), charge, std::move(basis), flags);
}

ParameterVector pack_parameters(const Molecule &molecule) {
    ParameterVector pv;
    pv.layout = molecule.layout();
    for (const auto &s : pv.layout) {
        switch (s.kind) {
        case ParameterKind::Coordinate:
            pv.values.push_back(molecule.atoms()[s.owner].position[s.component]);
            break;
        case ParameterKind::Exponent:
            pv.values.push_back(molecule.basis()[s.owner].exponents[s.component]);
            break;
        case ParameterKind::Coefficient:
            pv.values.push_back(molecule.basis()[s.owner].coefficients[s.component]);
            break;
        }
    }
    return pv;
}

Molecule unpack_parameters(const Molecule &molecule, std::span<const double> values) {
    const auto slots = molecule.layout();
    if (values.size() != slots.size()) {
        fail(ErrorKind::Layout, "parameter vector has length " + std::to_string(values.size()) +
                                    ", layout expects " + std::to_string(slots.size()));
    }
    auto atoms = molecule.atoms();
    auto basis = molecule.basis();
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto &s = slots[k];
        switch (s.kind) {
        case ParameterKind::Coordinate:
            atoms[s.owner].position[s.component] = values[k];
            break;
        case ParameterKind::Exponent:
            basis[s.owner].exponents[s.component] = values[k];
            break;
        case ParameterKind::Coefficient:
            basis[s.owner].coefficients[s.component] = values[k];
            break;
        }
    }
    return Molecule(std::move(atoms), molecule.charge(), std::move(basis),
                    molecule.diff_flags());
}

Molecule unpack_parameters(const Molecule &molecule, const ParameterVector &vector) {
    if (vector.layout != molecule.layout()) {
        fail(ErrorKind::Layout, "parameter layout does not match the molecule");
    }
    return unpack_parameters(molecule, std::span<const double>(vector.values));
}

} // namespace diffchem
