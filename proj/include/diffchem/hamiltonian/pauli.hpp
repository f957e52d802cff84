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

#include "diffchem/autodiff/dual.hpp"
#include "diffchem/error.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace diffchem::ham {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * Tensor product of single-qubit Paulis stored as two bit masks: bit q of
 * `x` / `z` is set when qubit q carries an X-part / Z-part (Y has both).
 */
struct PauliWord {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    [[nodiscard]] bool is_identity() const { return (x | z) == 0; }
    [[nodiscard]] std::uint64_t support() const { return x | z; }

    [[nodiscard]] PauliLetter letter(unsigned q) const {
        const bool bx = (x >> q) & 1U;
        const bool bz = (z >> q) & 1U;
        if (bx && bz) {
            return PauliLetter::Y;
        }
        if (bx) {
            return PauliLetter::X;
        }
        return bz ? PauliLetter::Z : PauliLetter::I;
    }

    void set(unsigned q, PauliLetter l) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        x &= ~bit;
        z &= ~bit;
        if (l == PauliLetter::X || l == PauliLetter::Y) {
            x |= bit;
        }
        if (l == PauliLetter::Z || l == PauliLetter::Y) {
            z |= bit;
        }
    }

    [[nodiscard]] unsigned y_count() const {
        return static_cast<unsigned>(std::popcount(x & z));
    }

    friend bool operator==(const PauliWord &, const PauliWord &) = default;
};

/// Canonical order: words compared as sequences of (qubit, letter) pairs in
/// ascending qubit order, letters ordered X < Y < Z; identity first.
bool canonical_less(const PauliWord &a, const PauliWord &b);

struct CanonicalLess {
    bool operator()(const PauliWord &a, const PauliWord &b) const { return canonical_less(a, b); }
};

/// a * b = i^k * word; returns (word, k mod 4).
std::pair<PauliWord, int> multiply(const PauliWord &a, const PauliWord &b);

/// True when the words commute on every qubit separately.
bool qubit_wise_commute(const PauliWord &a, const PauliWord &b);

/// True when the words commute as operators.
bool commute(const PauliWord &a, const PauliWord &b);

/// "I" or e.g. "X0 Z1 Y3".
std::string to_string(const PauliWord &w);
/// Inverse of to_string; throws Error(Input).
PauliWord parse_word(const std::string &text);

template <class T> struct PauliTerm {
    T coefficient;
    PauliWord word;
};

/// Coefficient considered negligible: every component below the threshold.
inline bool negligible(double c, double threshold) { return std::abs(c) < threshold; }
template <class T, std::size_t N>
bool negligible(const ad::Dual<T, N> &c, double threshold) {
    return ad::max_abs_component(c) < threshold;
}

inline constexpr double kPruneThreshold = 1e-12;

/**
 * Real-coefficient sum of Pauli words, deduplicated and sorted canonically.
 * Coefficients may be dual scalars; the word list is then fixed structure and
 * a word is only dropped when its value and all tangents are negligible.
 */
template <class T = double> class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(unsigned n_qubits) : n_qubits_(n_qubits) {}
    PauliSum(unsigned n_qubits, std::vector<PauliTerm<T>> terms)
        : n_qubits_(n_qubits), terms_(std::move(terms)) {
        for (const auto &t : terms_) {
            check_word(t.word);
        }
    }

    [[nodiscard]] unsigned n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm<T>> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    void add(const T &coefficient, const PauliWord &word) {
        check_word(word);
        terms_.push_back({coefficient, word});
    }

    /// Coefficient of `word` (zero when absent).
    [[nodiscard]] T coefficient(const PauliWord &word) const {
        T c(0);
        for (const auto &t : terms_) {
            if (t.word == word) {
                c += t.coefficient;
            }
        }
        return c;
    }

    [[nodiscard]] PauliSum<double> primal() const {
        std::vector<PauliTerm<double>> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            out.push_back({ad::primal(t.coefficient), t.word});
        }
        return PauliSum<double>(n_qubits_, std::move(out));
    }

  private:
    void check_word(const PauliWord &w) const {
        if (n_qubits_ < 64 && (w.support() >> n_qubits_) != 0) {
            fail(ErrorKind::Input, "Pauli word acts on a qubit >= n_qubits");
        }
    }

    unsigned n_qubits_ = 0;
    std::vector<PauliTerm<T>> terms_;
};

/// Merges like terms, drops negligible coefficients, sorts canonically.
template <class T> PauliSum<T> simplify(const PauliSum<T> &ps, double threshold = kPruneThreshold) {
    if (threshold < 0.0) {
        fail(ErrorKind::Input, "simplify: threshold must be non-negative");
    }
    std::map<PauliWord, T, CanonicalLess> merged;
    for (const auto &t : ps.terms()) {
        auto [it, inserted] = merged.try_emplace(t.word, t.coefficient);
        if (!inserted) {
            it->second += t.coefficient;
        }
    }
    std::vector<PauliTerm<T>> out;
    for (const auto &[w, c] : merged) {
        if (!negligible(c, threshold)) {
            out.push_back({c, w});
        }
    }
    return PauliSum<T>(ps.n_qubits(), std::move(out));
}

PauliSum<double> operator+(const PauliSum<double> &a, const PauliSum<double> &b);
PauliSum<double> operator*(double s, const PauliSum<double> &a);

/// Greedy first-fit partition into qubit-wise commuting groups.
std::vector<PauliSum<double>> group_commuting(const PauliSum<double> &ps);

/// Jordan-Wigner image of the total number operator: sum_p (I - Z_p) / 2.
PauliSum<double> number_operator(unsigned n_qubits);

/// Text form: `n_qubits <n>`, `constant <c>`, then `<coefficient> <word>` lines.
/// The constant header is informational: it is already folded into the
/// identity term when the sum came from a molecular Hamiltonian.
std::string to_text(const PauliSum<double> &ps, double constant = 0.0);

struct PauliText {
    PauliSum<double> sum;
    double constant = 0.0;
};
PauliText parse_text(const std::string &text);

} // namespace diffchem::ham
