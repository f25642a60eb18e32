// Copyright 2026 The vnchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vnchain/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define VNCHAIN_X86 1
#include <immintrin.h>
#else
#define VNCHAIN_X86 0
#endif

namespace vnchain::kernels::avx2 {

#if VNCHAIN_X86

#define VNCHAIN_AVX2 __attribute__((target("avx2,fma")))

namespace {

// Two complex doubles per register, laid out (re0, im0, re1, im1).
VNCHAIN_AVX2 inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

VNCHAIN_AVX2 inline void lanes(__m256d v, double out[4]) { _mm256_storeu_pd(out, v); }

}  // namespace

bool supported() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

VNCHAIN_AVX2 cplx dotc(const cplx *a, const cplx *b, std::size_t n) {
    __m256d direct0 = _mm256_setzero_pd();
    __m256d direct1 = _mm256_setzero_pd();
    __m256d cross0 = _mm256_setzero_pd();
    __m256d cross1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = load2(a + i);
        const __m256d vb0 = load2(b + i);
        const __m256d va1 = load2(a + i + 2);
        const __m256d vb1 = load2(b + i + 2);
        direct0 = _mm256_fmadd_pd(va0, vb0, direct0);
        direct1 = _mm256_fmadd_pd(va1, vb1, direct1);
        cross0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), cross0);
        cross1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), cross1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        direct0 = _mm256_fmadd_pd(va, vb, direct0);
        cross0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross0);
    }
    double d[4];
    double c[4];
    lanes(_mm256_add_pd(direct0, direct1), d);
    lanes(_mm256_add_pd(cross0, cross1), c);
    // direct = (ar*br, ai*bi), cross = (ar*bi, ai*br)
    double re = (d[0] + d[1]) + (d[2] + d[3]);
    double im = (c[0] - c[1]) + (c[2] - c[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

VNCHAIN_AVX2 cplx dotu(const cplx *a, const cplx *b, std::size_t n) {
    __m256d direct0 = _mm256_setzero_pd();
    __m256d direct1 = _mm256_setzero_pd();
    __m256d cross0 = _mm256_setzero_pd();
    __m256d cross1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = load2(a + i);
        const __m256d vb0 = load2(b + i);
        const __m256d va1 = load2(a + i + 2);
        const __m256d vb1 = load2(b + i + 2);
        direct0 = _mm256_fmadd_pd(va0, vb0, direct0);
        direct1 = _mm256_fmadd_pd(va1, vb1, direct1);
        cross0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), cross0);
        cross1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), cross1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        direct0 = _mm256_fmadd_pd(va, vb, direct0);
        cross0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross0);
    }
    double d[4];
    double c[4];
    lanes(_mm256_add_pd(direct0, direct1), d);
    lanes(_mm256_add_pd(cross0, cross1), c);
    double re = (d[0] - d[1]) + (d[2] - d[3]);
    double im = (c[0] + c[1]) + (c[2] + c[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

VNCHAIN_AVX2 void axpy(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    auto *yd = reinterpret_cast<double *>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d swapped = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0b0101));
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, vx, swapped);
        const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                y[i].imag() + alpha.real() * xi + alpha.imag() * xr};
    }
}

VNCHAIN_AVX2 double norm2(const cplx *a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(a + i);
        const __m256d v1 = load2(a + i + 2);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(a + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double s[4];
    lanes(_mm256_add_pd(acc0, acc1), s);
    double total = (s[0] + s[1]) + (s[2] + s[3]);
    for (; i < n; ++i) {
        total += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return total;
}

#else

bool supported() { return false; }
cplx dotc(const cplx *a, const cplx *b, std::size_t n) { return scalar::dotc(a, b, n); }
cplx dotu(const cplx *a, const cplx *b, std::size_t n) { return scalar::dotu(a, b, n); }
void axpy(cplx alpha, const cplx *x, cplx *y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
double norm2(const cplx *a, std::size_t n) { return scalar::norm2(a, n); }

#endif

}  // namespace vnchain::kernels::avx2
