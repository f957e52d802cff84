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
// AVX2/FMA code paths enabled per function; only reached after a runtime CPU
// check, so the rest of the library stays baseline x86-64.
#include "diffchem/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#include <immintrin.h>

#define DIFFCHEM_AVX2 __attribute__((target("avx2,fma")))

#include <bit>

namespace diffchem::simd {
namespace {

DIFFCHEM_AVX2 inline __m256d load2(const cplx *lo, const cplx *hi) {
    return _mm256_set_m128d(_mm_loadu_pd(reinterpret_cast<const double *>(hi)),
                            _mm_loadu_pd(reinterpret_cast<const double *>(lo)));
}

DIFFCHEM_AVX2 inline void store2(__m256d v, cplx *lo, cplx *hi) {
    _mm_storeu_pd(reinterpret_cast<double *>(lo), _mm256_castpd256_pd128(v));
    _mm_storeu_pd(reinterpret_cast<double *>(hi), _mm256_extractf128_pd(v, 1));
}

// Two complex products v * p, lane-wise.
DIFFCHEM_AVX2 inline __m256d cmul(__m256d v, __m256d p) {
    const __m256d vr = _mm256_movedup_pd(v);
    const __m256d vi = _mm256_permute_pd(v, 0xF);
    const __m256d ps = _mm256_permute_pd(p, 0x5);
    return _mm256_fmaddsub_pd(vr, p, _mm256_mul_pd(vi, ps));
}

DIFFCHEM_AVX2 inline cplx hsum_complex(__m256d v) {
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

DIFFCHEM_AVX2 inline double hsum(__m256d v) {
    alignas(32) double out[4];
    _mm256_store_pd(out, v);
    return (out[0] + out[1]) + (out[2] + out[3]);
}

DIFFCHEM_AVX2 inline cplx row_product(const CsrView &a, std::size_t r, const cplx *x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = a.row_ptr[r];
    const std::size_t end = a.row_ptr[r + 1];
    for (; k + 2 <= end; k += 2) {
        const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double *>(a.val + k));
        acc = _mm256_add_pd(acc, cmul(v, load2(x + a.col[k], x + a.col[k + 1])));
    }
    cplx out = hsum_complex(acc);
    if (k < end) {
        out += a.val[k] * x[a.col[k]];
    }
    return out;
}

DIFFCHEM_AVX2 void csr_apply(const CsrView &a, const cplx *x, cplx *out) {
    for (std::size_t r = 0; r < a.rows; ++r) {
        out[r] = row_product(a, r, x);
    }
}

DIFFCHEM_AVX2 cplx csr_expectation(const CsrView &a, const cplx *x) {
    cplx total = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
        total += std::conj(x[r]) * row_product(a, r, x);
    }
    return total;
}

// Accumulates conj(a) * b into (re-part, im-part) registers.
DIFFCHEM_AVX2 inline void conj_mul_acc(__m256d a, __m256d b, __m256d &re, __m256d &im) {
    re = _mm256_fmadd_pd(a, b, re);
    im = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0x5), im);
}

DIFFCHEM_AVX2 inline cplx finish_conj(__m256d re, __m256d im) {
    alignas(32) double t[4];
    _mm256_store_pd(t, im);
    return {hsum(re), (t[0] - t[1]) + (t[2] - t[3])};
}

DIFFCHEM_AVX2 cplx inner(std::size_t n, const cplx *a, const cplx *b) {
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        conj_mul_acc(_mm256_loadu_pd(reinterpret_cast<const double *>(a + i)),
                     _mm256_loadu_pd(reinterpret_cast<const double *>(b + i)), re, im);
    }
    cplx out = finish_conj(re, im);
    if (i < n) {
        out += std::conj(a[i]) * b[i];
    }
    return out;
}

DIFFCHEM_AVX2 double norm2(std::size_t n, const cplx *a) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double *>(a + i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double out = hsum(acc);
    if (i < n) {
        out += std::norm(a[i]);
    }
    return out;
}

DIFFCHEM_AVX2 void givens(cplx *amp, unsigned n_qubits, std::uint64_t fixed, std::uint64_t ones,
            std::uint64_t flip, double c, double s) {
    const std::uint64_t count = std::uint64_t{1} << (n_qubits - std::popcount(fixed));
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::uint64_t k = 0;
    for (; k + 2 <= count; k += 2) {
        const std::uint64_t i0 = detail::deposit(k, fixed) | ones;
        const std::uint64_t i1 = detail::deposit(k + 1, fixed) | ones;
        const __m256d ai = load2(amp + i0, amp + i1);
        const __m256d aj = load2(amp + (i0 ^ flip), amp + (i1 ^ flip));
        const __m256d ni = _mm256_fmsub_pd(vc, ai, _mm256_mul_pd(vs, aj));
        const __m256d nj = _mm256_fmadd_pd(vs, ai, _mm256_mul_pd(vc, aj));
        store2(ni, amp + i0, amp + i1);
        store2(nj, amp + (i0 ^ flip), amp + (i1 ^ flip));
    }
    if (k < count) {
        const std::uint64_t i = detail::deposit(k, fixed) | ones;
        const cplx ai = amp[i];
        const cplx aj = amp[i ^ flip];
        amp[i] = c * ai - s * aj;
        amp[i ^ flip] = s * ai + c * aj;
    }
}

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

DIFFCHEM_AVX2 cplx pauli_expectation(const cplx *amp, unsigned n_qubits, std::uint64_t x, std::uint64_t z) {
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::uint64_t c = 0;
    for (; c + 2 <= dim; c += 2) {
        const double s0 = (std::popcount(c & z) & 1) ? -1.0 : 1.0;
        const double s1 = (std::popcount((c + 1) & z) & 1) ? -1.0 : 1.0;
        const __m256d sign = _mm256_set_pd(s1, s1, s0, s0);
        const __m256d b = _mm256_mul_pd(sign, _mm256_loadu_pd(reinterpret_cast<const double *>(amp + c)));
        conj_mul_acc(load2(amp + (c ^ x), amp + ((c + 1) ^ x)), b, re, im);
    }
    cplx acc = finish_conj(re, im);
    if (c < dim) {
        const cplx v = (std::popcount(c & z) & 1) ? -amp[c] : amp[c];
        acc += std::conj(amp[c ^ x]) * v;
    }
    return kIPow[std::popcount(x & z) % 4] * acc;
}

const Kernels kAvx2{"avx2", csr_apply, csr_expectation, inner, norm2, givens, pauli_expectation};

} // namespace

const Kernels *avx2_kernels() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &kAvx2 : nullptr;
}

} // namespace diffchem::simd

#else

namespace diffchem::simd {
const Kernels *avx2_kernels() { return nullptr; }
} // namespace diffchem::simd

#endif
