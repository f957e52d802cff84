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

#include "diffchem/hamiltonian/fermion.hpp"
#include "diffchem/hamiltonian/pauli.hpp"
#include "diffchem/simd/kernels.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace diffchem::ham {

using cplx = std::complex<double>;

inline constexpr unsigned kDefaultQubitCap = 20;

/**
 * Complex sparse matrix on 2^n amplitudes in CSR layout, columns sorted within
 * each row. Qubit 0 is the most significant bit of the basis index.
 */
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(unsigned n_qubits, std::vector<std::size_t> row_ptr,
                 std::vector<std::uint32_t> col, std::vector<cplx> val);

    [[nodiscard]] unsigned n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << n_qubits_; }
    [[nodiscard]] std::size_t nnz() const { return val_.size(); }
    [[nodiscard]] const std::vector<std::size_t> &row_ptr() const { return row_ptr_; }
    [[nodiscard]] const std::vector<std::uint32_t> &col() const { return col_; }
    [[nodiscard]] const std::vector<cplx> &val() const { return val_; }

    [[nodiscard]] simd::CsrView view() const {
        return {dimension(), row_ptr_.data(), col_.data(), val_.data()};
    }

    /// Entry (r, c); zero when not stored.
    [[nodiscard]] cplx at(std::size_t r, std::size_t c) const;

    [[nodiscard]] std::vector<cplx> apply(const std::vector<cplx> &x) const;
    /// <x|A|x> without the Hermiticity check.
    [[nodiscard]] cplx expectation(const std::vector<cplx> &x) const;

    /// Largest |A_rc - conj(A_cr)|.
    [[nodiscard]] double hermiticity_error() const;

    /// Row-major dense copy (small n only).
    [[nodiscard]] std::vector<cplx> dense() const;

  private:
    unsigned n_qubits_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<cplx> val_;
};

using SparseHamiltonian = SparseMatrix;

/// Word masks re-indexed so that qubit q maps to amplitude bit n-1-q.
PauliWord to_amplitude_bits(const PauliWord &w, unsigned n_qubits);

SparseMatrix to_sparse(const std::vector<ComplexPauliTerm> &terms, unsigned n_qubits,
                       unsigned qubit_cap = kDefaultQubitCap);
SparseMatrix to_sparse(const PauliSum<double> &ps, unsigned qubit_cap = kDefaultQubitCap);

/// <psi|P|psi> for one Pauli word (qubit 0 = most significant amplitude bit).
cplx word_expectation(const std::vector<cplx> &psi, unsigned n_qubits, const PauliWord &w);

} // namespace diffchem::ham
