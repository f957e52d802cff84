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
#include "diffchem/hamiltonian/mo_integrals.hpp"
#include "diffchem/hamiltonian/pauli.hpp"

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace diffchem::ham {

struct Ladder {
    unsigned mode = 0;
    bool creation = false;
    friend auto operator<=>(const Ladder &, const Ladder &) = default;
};

inline Ladder create(unsigned mode) { return {mode, true}; }
inline Ladder annihilate(unsigned mode) { return {mode, false}; }

template <class T> struct FermionTerm {
    T coefficient;
    std::vector<Ladder> factors; ///< applied right to left, as written
};

/// Sum of products of ladder operators over `n_modes` spin-orbitals.
template <class T = double> class FermionicOperator {
  public:
    FermionicOperator() = default;
    explicit FermionicOperator(unsigned n_modes) : n_modes_(n_modes) {}

    void add(const T &coefficient, std::vector<Ladder> factors) {
        for (const auto &f : factors) {
            if (f.mode >= n_modes_) {
                fail(ErrorKind::Input, "ladder operator index " + std::to_string(f.mode) +
                                           " >= mode count " + std::to_string(n_modes_));
            }
        }
        terms_.push_back({coefficient, std::move(factors)});
    }

    [[nodiscard]] unsigned n_modes() const { return n_modes_; }
    [[nodiscard]] const std::vector<FermionTerm<T>> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

  private:
    unsigned n_modes_ = 0;
    std::vector<FermionTerm<T>> terms_;
};

namespace detail {

struct FactorsLess {
    bool operator()(const std::vector<Ladder> &a, const std::vector<Ladder> &b) const {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    }
};

/// Sorts a block of same-type operators into descending mode order; returns
/// the permutation sign, or 0 when a mode repeats (the product vanishes).
inline int sort_block(std::vector<Ladder>::iterator first, std::vector<Ladder>::iterator last) {
    int sign = 1;
    for (auto i = first; i != last; ++i) {
        for (auto j = first; j + 1 != last - (i - first); ++j) {
            if (j->mode < (j + 1)->mode) {
                std::iter_swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    for (auto j = first; j != last && j + 1 != last; ++j) {
        if (j->mode == (j + 1)->mode) {
            return 0;
        }
    }
    return sign;
}

} // namespace detail

/**
 * Canonical normal-ordered form: creators left of annihilators, each block in
 * descending mode order, like terms merged, negligible terms dropped, terms
 * sorted by (length, factors).
 */
template <class T>
FermionicOperator<T> normal_ordered(const FermionicOperator<T> &op,
                                    double threshold = kPruneThreshold) {
    std::map<std::vector<Ladder>, T, detail::FactorsLess> merged;
    std::vector<FermionTerm<T>> work(op.terms().rbegin(), op.terms().rend());
    while (!work.empty()) {
        FermionTerm<T> t = std::move(work.back());
        work.pop_back();
        auto &f = t.factors;
        std::size_t swap_at = f.size();
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            if (!f[i].creation && f[i + 1].creation) {
                swap_at = i;
                break;
            }
        }
        if (swap_at < f.size()) {
            // a_p a+_q = delta_pq - a+_q a_p
            if (f[swap_at].mode == f[swap_at + 1].mode) {
                FermionTerm<T> contracted{t.coefficient, {}};
                contracted.factors.insert(contracted.factors.end(), f.begin(),
                                          f.begin() + static_cast<std::ptrdiff_t>(swap_at));
                contracted.factors.insert(contracted.factors.end(),
                                          f.begin() + static_cast<std::ptrdiff_t>(swap_at + 2),
                                          f.end());
                work.push_back(std::move(contracted));
            }
            std::swap(f[swap_at], f[swap_at + 1]);
            t.coefficient = -t.coefficient;
            work.push_back(std::move(t));
            continue;
        }
        const auto split = std::find_if(f.begin(), f.end(), [](const Ladder &l) { return !l.creation; });
        const int s1 = detail::sort_block(f.begin(), split);
        const int s2 = detail::sort_block(split, f.end());
        if (s1 == 0 || s2 == 0) {
            continue;
        }
        T c = t.coefficient;
        if (s1 * s2 < 0) {
            c = -c;
        }
        auto [it, inserted] = merged.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
        }
    }
    FermionicOperator<T> out(op.n_modes());
    for (auto &[factors, c] : merged) {
        if (!negligible(c, threshold)) {
            out.add(c, factors);
        }
    }
    return out;
}

/// Adjoint with real coefficients: reverse each product and swap types.
template <class T> FermionicOperator<T> hermitian_conjugate(const FermionicOperator<T> &op) {
    FermionicOperator<T> out(op.n_modes());
    for (const auto &t : op.terms()) {
        std::vector<Ladder> f(t.factors.rbegin(), t.factors.rend());
        for (auto &l : f) {
            l.creation = !l.creation;
        }
        out.add(t.coefficient, std::move(f));
    }
    return out;
}

/**
 * Second-quantized electronic Hamiltonian over 2M spin-orbitals, spatial
 * orbital i mapped to 2i (alpha) and 2i+1 (beta). The core constant becomes
 * the coefficient of the empty product.
 */
template <class T>
FermionicOperator<T> fermionic_hamiltonian(const MOIntegrals<T> &mo,
                                           double threshold = kPruneThreshold) {
    const auto m = static_cast<unsigned>(mo.n_orbitals);
    FermionicOperator<T> op(2 * m);
    if (!ad::is_zero(mo.core_constant)) {
        op.add(mo.core_constant, {});
    }
    for (unsigned p = 0; p < m; ++p) {
        for (unsigned q = 0; q < m; ++q) {
            for (unsigned sigma = 0; sigma < 2; ++sigma) {
                op.add(mo.one_body(p, q), {create(2 * p + sigma), annihilate(2 * q + sigma)});
            }
        }
    }
    for (unsigned p = 0; p < m; ++p) {
        for (unsigned q = 0; q < m; ++q) {
            for (unsigned r = 0; r < m; ++r) {
                for (unsigned s = 0; s < m; ++s) {
                    const T h = 0.5 * mo.h2(p, q, r, s);
                    for (unsigned sigma = 0; sigma < 2; ++sigma) {
                        for (unsigned tau = 0; tau < 2; ++tau) {
                            const unsigned ps = 2 * p + sigma;
                            const unsigned qt = 2 * q + tau;
                            const unsigned rt = 2 * r + tau;
                            const unsigned ss = 2 * s + sigma;
                            if (ps == qt || rt == ss) {
                                continue;
                            }
                            op.add(h, {create(ps), create(qt), annihilate(rt), annihilate(ss)});
                        }
                    }
                }
            }
        }
    }
    return normal_ordered(op, threshold);
}

/// Pauli expansion with complex coefficients; valid for any operator.
struct ComplexPauliTerm {
    std::complex<double> coefficient;
    PauliWord word;
};

namespace detail {

/// JW image of one ladder operator: 1/2 Z..Z (X -/+ iY).
inline std::array<std::pair<std::complex<double>, PauliWord>, 2> jw_ladder(const Ladder &l) {
    const std::uint64_t parity = (std::uint64_t{1} << l.mode) - 1;
    const std::uint64_t bit = std::uint64_t{1} << l.mode;
    const PauliWord xw{bit, parity};
    const PauliWord yw{bit, parity | bit};
    const std::complex<double> iy = l.creation ? std::complex<double>(0.0, -0.5)
                                               : std::complex<double>(0.0, 0.5);
    return {{{0.5, xw}, {iy, yw}}};
}

inline constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

/// Expands a product of ladder operators into Pauli words.
inline std::vector<std::pair<std::complex<double>, PauliWord>>
jw_product(const std::vector<Ladder> &factors) {
    std::vector<std::pair<std::complex<double>, PauliWord>> acc{{1.0, PauliWord{}}};
    for (const auto &l : factors) {
        const auto img = jw_ladder(l);
        std::vector<std::pair<std::complex<double>, PauliWord>> next;
        next.reserve(acc.size() * 2);
        for (const auto &[c, w] : acc) {
            for (const auto &[c2, w2] : img) {
                auto [w3, k] = multiply(w, w2);
                next.emplace_back(c * c2 * kIPow[k], w3);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace detail

inline std::vector<ComplexPauliTerm> jordan_wigner_complex(const FermionicOperator<double> &op,
                                                           double threshold = kPruneThreshold) {
    std::map<PauliWord, std::complex<double>, CanonicalLess> merged;
    for (const auto &t : op.terms()) {
        for (const auto &[c, w] : detail::jw_product(t.factors)) {
            merged[w] += t.coefficient * c;
        }
    }
    std::vector<ComplexPauliTerm> out;
    for (const auto &[w, c] : merged) {
        if (std::abs(c) >= threshold) {
            out.push_back({c, w});
        }
    }
    return out;
}

inline constexpr double kImaginaryTolerance = 1e-10;

/**
 * Jordan-Wigner image as a real PauliSum. Real and imaginary parts are
 * accumulated separately; an imaginary part above 1e-10 means the operator
 * was not Hermitian and is reported as an internal-consistency error.
 */
template <class T>
PauliSum<T> jordan_wigner(const FermionicOperator<T> &op, double threshold = kPruneThreshold) {
    std::map<PauliWord, std::pair<T, T>, CanonicalLess> merged;
    for (const auto &t : op.terms()) {
        for (const auto &[c, w] : detail::jw_product(t.factors)) {
            auto [it, inserted] = merged.try_emplace(w, T(0), T(0));
            if (c.real() != 0.0) {
                it->second.first += t.coefficient * c.real();
            }
            if (c.imag() != 0.0) {
                it->second.second += t.coefficient * c.imag();
            }
        }
    }
    PauliSum<T> out(op.n_modes());
    for (const auto &[w, re_im] : merged) {
        if (ad::max_abs_component(re_im.second) > kImaginaryTolerance) {
            fail(ErrorKind::InternalConsistency,
                 "Jordan-Wigner image has an imaginary coefficient on " + to_string(w) +
                     "; operator is not Hermitian");
        }
        if (!negligible(re_im.first, threshold)) {
            out.add(re_im.first, w);
        }
    }
    return out;
}

} // namespace diffchem::ham
