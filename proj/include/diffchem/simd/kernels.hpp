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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace diffchem::simd {

using cplx = std::complex<double>;

/// Compressed-sparse-row view of a complex matrix.
struct CsrView {
    std::size_t rows = 0;
    const std::size_t *row_ptr = nullptr;
    const std::uint32_t *col = nullptr;
    const cplx *val = nullptr;
};

/**
 * Statevector and sparse kernels. Each entry has a scalar reference version
 * and, where the CPU supports it, an AVX2+FMA version; results agree to
 * rounding.
 */
struct Kernels {
    std::string_view name;
    /// out = A x
    void (*csr_apply)(const CsrView &a, const cplx *x, cplx *out);
    /// <x|A|x>
    cplx (*csr_expectation)(const CsrView &a, const cplx *x);
    /// sum conj(a_i) b_i
    cplx (*inner)(std::size_t n, const cplx *a, const cplx *b);
    /// sum |a_i|^2
    double (*norm2)(std::size_t n, const cplx *a);
    /**
     * Real Givens rotation between index pairs (i, i ^ flip) for every i with
     * (i & fixed) == ones:  a_i' = c a_i - s a_j,  a_j' = s a_i + c a_j.
     * `fixed` must contain `flip`; n_qubits bounds the index space.
     */
    void (*givens)(cplx *amp, unsigned n_qubits, std::uint64_t fixed, std::uint64_t ones,
                   std::uint64_t flip, double c, double s);
    /// <psi| P |psi> for P = i^{|x&z|} X^x Z^z in amplitude-bit masks.
    cplx (*pauli_expectation)(const cplx *amp, unsigned n_qubits, std::uint64_t x,
                              std::uint64_t z);
};

const Kernels &scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const Kernels *avx2_kernels();

/// Kernels used by the library: AVX2 when available unless DIFFCHEM_SIMD=scalar.
const Kernels &active_kernels();

namespace detail {
/// Spreads the bits of k over the zero positions of `fixed` (ascending).
inline std::uint64_t deposit(std::uint64_t k, std::uint64_t fixed) {
    std::uint64_t out = 0;
    std::uint64_t bit = 1;
    while (k != 0) {
        if ((fixed & bit) == 0) {
            if (k & 1U) {
                out |= bit;
            }
            k >>= 1;
        }
        bit <<= 1;
    }
    return out;
}
} // namespace detail

} // namespace diffchem::simd
