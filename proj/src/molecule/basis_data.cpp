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
#include "diffchem/molecule/basis_data.hpp"

#include "diffchem/error.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace diffchem {

namespace {

constexpr std::string_view kSto3g = R"(# STO-3G minimal basis, H through Ne.
# Format: 'element <symbol>', then per shell 'shell <s|p|sp>' followed by
# three lines 'exponent coefficient [coefficient_p]'.

element H
shell s
3.42525091 0.15432897
0.62391373 0.53532814
0.16885540 0.44463454

element He
shell s
6.36242139 0.15432897
1.15892300 0.53532814
0.31364979 0.44463454

element Li
shell s
16.1195750 0.15432897
2.9362007 0.53532814
0.7946505 0.44463454
shell sp
0.6362897 -0.09996723 0.15591627
0.1478601 0.39951283 0.60768372
0.0480887 0.70011547 0.39195739

element Be
shell s
30.1678710 0.15432897
5.4951153 0.53532814
1.4871927 0.44463454
shell sp
1.3148331 -0.09996723 0.15591627
0.3055389 0.39951283 0.60768372
0.0993707 0.70011547 0.39195739

element B
shell s
48.7911130 0.15432897
8.8873622 0.53532814
2.4052670 0.44463454
shell sp
2.2369561 -0.09996723 0.15591627
0.5198205 0.39951283 0.60768372
0.1690618 0.70011547 0.39195739

element C
shell s
71.6168370 0.15432897
13.0450960 0.53532814
3.5305122 0.44463454
shell sp
2.9412494 -0.09996723 0.15591627
0.6834831 0.39951283 0.60768372
0.2222899 0.70011547 0.39195739

element N
shell s
99.1061690 0.15432897
18.0523120 0.53532814
4.8856602 0.44463454
shell sp
3.7804559 -0.09996723 0.15591627
0.8784966 0.39951283 0.60768372
0.2857144 0.70011547 0.39195739

element O
shell s
130.7093200 0.15432897
23.8088610 0.53532814
6.4436083 0.44463454
shell sp
5.0331513 -0.09996723 0.15591627
1.1695961 0.39951283 0.60768372
0.3803890 0.70011547 0.39195739

element F
shell s
166.6791300 0.15432897
30.3608120 0.53532814
8.2168207 0.44463454
shell sp
6.4648032 -0.09996723 0.15591627
1.5022812 0.39951283 0.60768372
0.4885885 0.70011547 0.39195739

element Ne
shell s
207.0156100 0.15432897
37.7081510 0.53532814
10.2052970 0.44463454
shell sp
8.2463151 -0.09996723 0.15591627
1.9162662 0.39951283 0.60768372
0.6232293 0.70011547 0.39195739
)";

ShellType parse_shell_type(const std::string &word, int line_no) {
    if (word == "s") {
        return ShellType::S;
    }
    if (word == "p") {
        return ShellType::P;
    }
    if (word == "sp") {
        return ShellType::SP;
    }
    fail(ErrorKind::Input,
         "basis data line " + std::to_string(line_no) + ": unknown shell type '" + word + "'");
}

} // namespace

BasisLibrary BasisLibrary::parse(std::istream &in) {
    BasisLibrary lib;
    std::string line;
    std::string element;
    ShellData *shell = nullptr;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) {
            continue;
        }
        if (head == "element") {
            if (!(ls >> element)) {
                fail(ErrorKind::Input,
                     "basis data line " + std::to_string(line_no) + ": missing element symbol");
            }
            lib.shells_[element].clear();
            shell = nullptr;
            continue;
        }
        if (head == "shell") {
            if (element.empty()) {
                fail(ErrorKind::Input, "basis data line " + std::to_string(line_no) +
                                           ": shell before any element");
            }
            std::string type;
            ls >> type;
            auto &list = lib.shells_[element];
            list.push_back(ShellData{parse_shell_type(type, line_no), {}, {}, {}});
            shell = &list.back();
            continue;
        }
        if (shell == nullptr) {
            fail(ErrorKind::Input,
                 "basis data line " + std::to_string(line_no) + ": data outside a shell");
        }
        std::istringstream nums(line);
        double exponent = 0.0;
        double coef = 0.0;
        if (!(nums >> exponent >> coef)) {
            fail(ErrorKind::Input,
                 "basis data line " + std::to_string(line_no) + ": expected numbers");
        }
        shell->exponents.push_back(exponent);
        shell->coefficients.push_back(coef);
        if (shell->type == ShellType::SP) {
            double coef_p = 0.0;
            if (!(nums >> coef_p)) {
                fail(ErrorKind::Input, "basis data line " + std::to_string(line_no) +
                                           ": sp shell needs two coefficients");
            }
            shell->coefficients_p.push_back(coef_p);
        }
        if (exponent <= 0.0) {
            fail(ErrorKind::Domain,
                 "basis data line " + std::to_string(line_no) + ": exponent must be positive");
        }
    }
    for (const auto &[el, shells] : lib.shells_) {
        for (const auto &s : shells) {
            if (s.exponents.empty()) {
                fail(ErrorKind::Input, "basis data: empty shell for element " + el);
            }
        }
    }
    return lib;
}

BasisLibrary BasisLibrary::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

BasisLibrary BasisLibrary::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Input, "cannot open basis data file '" + path + "'");
    }
    return parse(in);
}

bool BasisLibrary::contains(const std::string &symbol) const {
    return shells_.count(symbol) != 0;
}

const std::vector<ShellData> &BasisLibrary::shells(const std::string &symbol) const {
    const auto it = shells_.find(symbol);
    if (it == shells_.end()) {
        fail(ErrorKind::UnsupportedElement, "unsupported element '" + symbol + "'");
    }
    return it->second;
}

std::vector<std::string> BasisLibrary::elements() const {
    std::vector<std::string> out;
    for (const auto &kv : shells_) {
        out.push_back(kv.first);
    }
    return out;
}

const BasisLibrary &sto3g_library() {
    static const BasisLibrary lib = BasisLibrary::parse(kSto3g);
    return lib;
}

std::string_view sto3g_text() { return kSto3g; }

int atomic_number(const std::string &symbol) {
    static constexpr std::array<std::string_view, 18> kSymbols = {
        "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",
        "Ne", "Na", "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar"};
    for (std::size_t i = 0; i < kSymbols.size(); ++i) {
        if (kSymbols[i] == symbol) {
            return static_cast<int>(i) + 1;
        }
    }
    fail(ErrorKind::UnsupportedElement, "unsupported element '" + symbol + "'");
}

} // namespace diffchem
