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
#include "diffchem/simd/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace diffchem::simd {
namespace {

void csr_apply(const CsrView &a, const cplx *x, cplx *out) {
    for (std::size_t r = 0; r < a.rows; ++r) {
        cplx acc = 0.0;
        for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            acc += a.val[k] * x[a.col[k]];
        }
        out[r] = acc;
    }
}

cplx csr_expectation(const CsrView &a, const cplx *x) {
    cplx total = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
        cplx acc = 0.0;
        for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
            acc += a.val[k] * x[a.col[k]];
        }
        total += std::conj(x[r]) * acc;
    }
    return total;
}

cplx inner(std::size_t n, const cplx *a, const cplx *b) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double norm2(std::size_t n, const cplx *a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::norm(a[i]);
    }
    return acc;
}

void givens(cplx *amp, unsigned n_qubits, std::uint64_t fixed, std::uint64_t ones,
            std::uint64_t flip, double c, double s) {
    const std::uint64_t count = std::uint64_t{1} << (n_qubits - std::popcount(fixed));
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t i = detail::deposit(k, fixed) | ones;
        const std::uint64_t j = i ^ flip;
        const cplx ai = amp[i];
        const cplx aj = amp[j];
        amp[i] = c * ai - s * aj;
        amp[j] = s * ai + c * aj;
    }
}

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

cplx pauli_expectation(const cplx *amp, unsigned n_qubits, std::uint64_t x, std::uint64_t z) {
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    cplx acc = 0.0;
    for (std::uint64_t c = 0; c < dim; ++c) {
        const cplx v = (std::popcount(c & z) & 1) ? -amp[c] : amp[c];
        acc += std::conj(amp[c ^ x]) * v;
    }
    return kIPow[std::popcount(x & z) % 4] * acc;
}

const Kernels kScalar{"scalar", csr_apply, csr_expectation, inner, norm2, givens, pauli_expectation};

} // namespace

const Kernels &scalar_kernels() { return kScalar; }

const Kernels &active_kernels() {
    static const Kernels *chosen = [] {
        const char *env = std::getenv("DIFFCHEM_SIMD");
        if (env != nullptr && std::string(env) == "scalar") {
            return &kScalar;
        }
        const Kernels *v = avx2_kernels();
        return v != nullptr ? v : &kScalar;
    }();
    return *chosen;
}

} // namespace diffchem::simd
