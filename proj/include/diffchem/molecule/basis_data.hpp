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

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace diffchem {

enum class ShellType { S, P, SP };

/// One contracted shell as read from a basis data file.
struct ShellData {
    ShellType type = ShellType::S;
    std::vector<double> exponents;
    std::vector<double> coefficients;   ///< s (or only) coefficients
    std::vector<double> coefficients_p; ///< p coefficients of an sp shell
};

/// Element symbol -> ordered shells.
class BasisLibrary {
  public:
    /// Parses the plain-text basis format. Throws Error(Input) on malformed
    /// content, with the offending line number.
    static BasisLibrary parse(std::istream &in);
    static BasisLibrary parse(std::string_view text);
    static BasisLibrary from_file(const std::string &path);

    [[nodiscard]] bool contains(const std::string &symbol) const;
    /// Throws Error(UnsupportedElement) naming the symbol.
    [[nodiscard]] const std::vector<ShellData> &shells(const std::string &symbol) const;
    [[nodiscard]] std::vector<std::string> elements() const;

  private:
    std::map<std::string, std::vector<ShellData>> shells_;
};

/// The STO-3G table compiled into the library (H through Ne).
const BasisLibrary &sto3g_library();
std::string_view sto3g_text();

/// Atomic number for a supported element symbol; throws UnsupportedElement.
int atomic_number(const std::string &symbol);

} // namespace diffchem
