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
#include "diffchem/hamiltonian/sparse.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace diffchem::ham {

SparseMatrix::SparseMatrix(unsigned n_qubits, std::vector<std::size_t> row_ptr,
                           std::vector<std::uint32_t> col, std::vector<cplx> val)
    : n_qubits_(n_qubits), row_ptr_(std::move(row_ptr)), col_(std::move(col)),
      val_(std::move(val)) {
    if (row_ptr_.size() != dimension() + 1 || col_.size() != val_.size() ||
        row_ptr_.back() != val_.size()) {
        fail(ErrorKind::Input, "inconsistent CSR arrays");
    }
}

cplx SparseMatrix::at(std::size_t r, std::size_t c) const {
    const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
    const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
    const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
    if (it == last || *it != c) {
        return 0.0;
    }
    return val_[static_cast<std::size_t>(it - col_.begin())];
}

std::vector<cplx> SparseMatrix::apply(const std::vector<cplx> &x) const {
    if (x.size() != dimension()) {
        fail(ErrorKind::Input, "matrix-vector dimension mismatch");
    }
    std::vector<cplx> out(dimension());
    simd::active_kernels().csr_apply(view(), x.data(), out.data());
    return out;
}

cplx SparseMatrix::expectation(const std::vector<cplx> &x) const {
    if (x.size() != dimension()) {
        fail(ErrorKind::Input, "expectation dimension mismatch");
    }
    return simd::active_kernels().csr_expectation(view(), x.data());
}

double SparseMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dimension(); ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            worst = std::max(worst, std::abs(val_[k] - std::conj(at(col_[k], r))));
        }
    }
    return worst;
}

std::vector<cplx> SparseMatrix::dense() const {
    const std::size_t d = dimension();
    std::vector<cplx> out(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            out[r * d + col_[k]] = val_[k];
        }
    }
    return out;
}

PauliWord to_amplitude_bits(const PauliWord &w, unsigned n_qubits) {
    PauliWord out;
    for (unsigned q = 0; q < n_qubits; ++q) {
        const unsigned b = n_qubits - 1 - q;
        out.x |= ((w.x >> q) & 1U) << b;
        out.z |= ((w.z >> q) & 1U) << b;
    }
    return out;
}

namespace {
constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

SparseMatrix to_sparse(const std::vector<ComplexPauliTerm> &terms, unsigned n_qubits,
                       unsigned qubit_cap) {
    if (n_qubits > qubit_cap || n_qubits > 31) {
        fail(ErrorKind::Resource, "sparse matrix on " + std::to_string(n_qubits) +
                                      " qubits exceeds the cap of " + std::to_string(qubit_cap));
    }
    // Terms sharing an X-mask land on the same column of every row.
    struct Entry {
        std::uint64_t z;
        cplx phase;
    };
    std::map<std::uint64_t, std::vector<Entry>> groups;
    for (const auto &t : terms) {
        const PauliWord a = to_amplitude_bits(t.word, n_qubits);
        groups[a.x].push_back({a.z, t.coefficient * kIPow[std::popcount(a.x & a.z) % 4]});
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::size_t> row_ptr(dim + 1, 0);
    std::vector<std::uint32_t> col;
    std::vector<cplx> val;
    std::vector<std::pair<std::uint32_t, cplx>> row;
    for (std::size_t r = 0; r < dim; ++r) {
        row.clear();
        for (const auto &[x, entries] : groups) {
            const std::uint64_t c = r ^ x;
            cplx v = 0.0;
            for (const auto &e : entries) {
                v += (std::popcount(c & e.z) & 1) ? -e.phase : e.phase;
            }
            if (v != cplx(0.0)) {
                row.emplace_back(static_cast<std::uint32_t>(c), v);
            }
        }
        std::sort(row.begin(), row.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        for (const auto &[c, v] : row) {
            col.push_back(c);
            val.push_back(v);
        }
        row_ptr[r + 1] = val.size();
    }
    return SparseMatrix(n_qubits, std::move(row_ptr), std::move(col), std::move(val));
}

SparseMatrix to_sparse(const PauliSum<double> &ps, unsigned qubit_cap) {
    std::vector<ComplexPauliTerm> terms;
    terms.reserve(ps.size());
    for (const auto &t : ps.terms()) {
        terms.push_back({t.coefficient, t.word});
    }
    return to_sparse(terms, ps.n_qubits(), qubit_cap);
}

cplx word_expectation(const std::vector<cplx> &psi, unsigned n_qubits, const PauliWord &w) {
    if (psi.size() != (std::size_t{1} << n_qubits)) {
        fail(ErrorKind::Input, "word expectation dimension mismatch");
    }
    const PauliWord a = to_amplitude_bits(w, n_qubits);
    return simd::active_kernels().pauli_expectation(psi.data(), n_qubits, a.x, a.z);
}

} // namespace diffchem::ham
