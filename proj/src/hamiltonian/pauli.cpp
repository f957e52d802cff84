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
#include "diffchem/hamiltonian/pauli.hpp"

#include <cstdio>
#include <sstream>

namespace diffchem::ham {

bool canonical_less(const PauliWord &a, const PauliWord &b) {
    std::uint64_t sa = a.support();
    std::uint64_t sb = b.support();
    while (sa != 0 && sb != 0) {
        const auto qa = static_cast<unsigned>(std::countr_zero(sa));
        const auto qb = static_cast<unsigned>(std::countr_zero(sb));
        if (qa != qb) {
            return qa < qb;
        }
        const auto la = a.letter(qa);
        const auto lb = b.letter(qb);
        if (la != lb) {
            return la < lb;
        }
        sa &= sa - 1;
        sb &= sb - 1;
    }
    return sa == 0 && sb != 0;
}

std::pair<PauliWord, int> multiply(const PauliWord &a, const PauliWord &b) {
    const PauliWord r{a.x ^ b.x, a.z ^ b.z};
    // P = i^{|x&z|} X^x Z^z per word; Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
    const int k = static_cast<int>(std::popcount(a.x & a.z)) +
                  static_cast<int>(std::popcount(b.x & b.z)) -
                  static_cast<int>(std::popcount(r.x & r.z)) +
                  2 * static_cast<int>(std::popcount(a.z & b.x));
    return {r, ((k % 4) + 4) % 4};
}

bool qubit_wise_commute(const PauliWord &a, const PauliWord &b) {
    const std::uint64_t both = a.support() & b.support();
    return (((a.x ^ b.x) | (a.z ^ b.z)) & both) == 0;
}

bool commute(const PauliWord &a, const PauliWord &b) {
    const int anti = std::popcount(a.x & b.z) + std::popcount(a.z & b.x);
    return anti % 2 == 0;
}

std::string to_string(const PauliWord &w) {
    if (w.is_identity()) {
        return "I";
    }
    std::string out;
    std::uint64_t s = w.support();
    while (s != 0) {
        const auto q = static_cast<unsigned>(std::countr_zero(s));
        if (!out.empty()) {
            out += ' ';
        }
        switch (w.letter(q)) {
        case PauliLetter::X: out += 'X'; break;
        case PauliLetter::Y: out += 'Y'; break;
        case PauliLetter::Z: out += 'Z'; break;
        case PauliLetter::I: break;
        }
        out += std::to_string(q);
        s &= s - 1;
    }
    return out;
}

PauliWord parse_word(const std::string &text) {
    std::istringstream in(text);
    std::string tok;
    PauliWord w;
    bool any = false;
    while (in >> tok) {
        if (tok == "I") {
            any = true;
            continue;
        }
        if (tok.size() < 2) {
            fail(ErrorKind::Input, "malformed Pauli factor '" + tok + "'");
        }
        PauliLetter l;
        switch (tok[0]) {
        case 'X': l = PauliLetter::X; break;
        case 'Y': l = PauliLetter::Y; break;
        case 'Z': l = PauliLetter::Z; break;
        default: fail(ErrorKind::Input, "malformed Pauli factor '" + tok + "'");
        }
        unsigned long q = 0;
        try {
            std::size_t used = 0;
            q = std::stoul(tok.substr(1), &used);
            if (used != tok.size() - 1) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            fail(ErrorKind::Input, "malformed Pauli factor '" + tok + "'");
        }
        if (q >= 64) {
            fail(ErrorKind::Input, "qubit index too large in '" + tok + "'");
        }
        if (w.letter(static_cast<unsigned>(q)) != PauliLetter::I) {
            fail(ErrorKind::Input, "qubit repeated in Pauli word '" + text + "'");
        }
        w.set(static_cast<unsigned>(q), l);
        any = true;
    }
    if (!any) {
        fail(ErrorKind::Input, "empty Pauli word");
    }
    return w;
}

PauliSum<double> operator+(const PauliSum<double> &a, const PauliSum<double> &b) {
    PauliSum<double> out(std::max(a.n_qubits(), b.n_qubits()));
    for (const auto &t : a.terms()) {
        out.add(t.coefficient, t.word);
    }
    for (const auto &t : b.terms()) {
        out.add(t.coefficient, t.word);
    }
    return simplify(out, 0.0);
}

PauliSum<double> operator*(double s, const PauliSum<double> &a) {
    PauliSum<double> out(a.n_qubits());
    for (const auto &t : a.terms()) {
        out.add(s * t.coefficient, t.word);
    }
    return out;
}

std::vector<PauliSum<double>> group_commuting(const PauliSum<double> &ps) {
    std::vector<PauliTerm<double>> terms = ps.terms();
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto &a, const auto &b) { return canonical_less(a.word, b.word); });
    std::vector<std::vector<PauliTerm<double>>> groups;
    for (const auto &t : terms) {
        bool placed = false;
        for (auto &g : groups) {
            const bool fits = std::all_of(g.begin(), g.end(), [&](const auto &o) {
                return qubit_wise_commute(o.word, t.word);
            });
            if (fits) {
                g.push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({t});
        }
    }
    std::vector<PauliSum<double>> out;
    out.reserve(groups.size());
    for (auto &g : groups) {
        out.emplace_back(ps.n_qubits(), std::move(g));
    }
    return out;
}

PauliSum<double> number_operator(unsigned n_qubits) {
    if (n_qubits < 1) {
        fail(ErrorKind::Input, "number_operator needs at least one qubit");
    }
    PauliSum<double> n(n_qubits);
    n.add(0.5 * n_qubits, PauliWord{});
    for (unsigned q = 0; q < n_qubits; ++q) {
        PauliWord w;
        w.set(q, PauliLetter::Z);
        n.add(-0.5, w);
    }
    return simplify(n);
}

std::string to_text(const PauliSum<double> &ps, double constant) {
    std::ostringstream out;
    char buf[64];
    out << "n_qubits " << ps.n_qubits() << '\n';
    std::snprintf(buf, sizeof buf, "%.17e", constant);
    out << "constant " << buf << '\n';
    for (const auto &t : ps.terms()) {
        std::snprintf(buf, sizeof buf, "%.17e", t.coefficient);
        out << buf << ' ' << to_string(t.word) << '\n';
    }
    return out.str();
}

PauliText parse_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    PauliText out;
    bool have_n = false;
    std::vector<PauliTerm<double>> terms;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) {
            continue;
        }
        if (head == "n_qubits") {
            unsigned n = 0;
            if (!(ls >> n)) {
                fail(ErrorKind::Input, "Pauli text line " + std::to_string(line_no) +
                                           ": bad n_qubits header");
            }
            out.sum = PauliSum<double>(n);
            have_n = true;
            continue;
        }
        if (head == "constant") {
            if (!(ls >> out.constant)) {
                fail(ErrorKind::Input, "Pauli text line " + std::to_string(line_no) +
                                           ": bad constant header");
            }
            continue;
        }
        double c = 0.0;
        try {
            std::size_t used = 0;
            c = std::stod(head, &used);
            if (used != head.size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            fail(ErrorKind::Input,
                 "Pauli text line " + std::to_string(line_no) + ": bad coefficient '" + head + "'");
        }
        std::string rest;
        std::getline(ls, rest);
        terms.push_back({c, parse_word(rest)});
    }
    if (!have_n) {
        fail(ErrorKind::Input, "Pauli text is missing the n_qubits header");
    }
    out.sum = PauliSum<double>(out.sum.n_qubits(), std::move(terms));
    return out;
}

} // namespace diffchem::ham
