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

#include "diffchem/error.hpp"
#include "diffchem/molecule/molecule.hpp"

#include <optional>

#include <string>
#include <vector>

namespace fixtures {

inline diffchem::Molecule make(const std::vector<std::string> &symbols,
                               const std::vector<double> &xyz, int charge = 0,
                               diffchem::DiffFlags flags = {}) {
    return diffchem::build_molecule(symbols, xyz, charge, "sto-3g", flags);
}

inline diffchem::Molecule h2(double r = 1.4, diffchem::DiffFlags flags = {}) {
    return make({"H", "H"}, {0, 0, 0, 0, 0, r}, 0, flags);
}

inline diffchem::Molecule he() { return make({"He"}, {0, 0, 0}); }

inline diffchem::Molecule heh_plus(double r = 1.4632) {
    return make({"He", "H"}, {0, 0, 0, 0, 0, r}, 1);
}

// Deliberately not equilateral, so no gradient component vanishes by symmetry.
inline diffchem::Molecule h3_plus(diffchem::DiffFlags flags = {}) {
    return make({"H", "H", "H"}, {0, 0, 0, 0, 0, 1.6, 0, 1.5, 0.8}, 1, flags);
}

inline constexpr diffchem::DiffFlags kAll{true, true, true};

/// Kind of the diffchem::Error thrown by f, or nullopt if it returns.
template <class F> std::optional<diffchem::ErrorKind> error_kind(F &&f) {
    try {
        f();
    } catch (const diffchem::Error &e) {
        return e.kind();
    }
    return std::nullopt;
}

} // namespace fixtures
