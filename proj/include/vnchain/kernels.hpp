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

#pragma once

// Complex double-precision inner-loop kernels.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at first use from the CPU
// feature bits; VNCHAIN_SIMD=scalar|avx2 in the environment or force_backend()
// overrides the choice. Variants are required to agree with the scalar
// reference to within a few ulps per accumulated term (see test_kernels.cpp).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace vnchain::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
    Backend backend;
    // sum_i conj(a_i) * b_i
    cplx (*dotc)(const cplx *a, const cplx *b, std::size_t n);
    // sum_i a_i * b_i
    cplx (*dotu)(const cplx *a, const cplx *b, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
    // sum_i |a_i|^2
    double (*norm2)(const cplx *a, std::size_t n);
};

namespace scalar {
cplx dotc(const cplx *a, const cplx *b, std::size_t n);
cplx dotu(const cplx *a, const cplx *b, std::size_t n);
void axpy(cplx alpha, const cplx *x, cplx *y, std::size_t n);
double norm2(const cplx *a, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
cplx dotc(const cplx *a, const cplx *b, std::size_t n);
cplx dotu(const cplx *a, const cplx *b, std::size_t n);
void axpy(cplx alpha, const cplx *x, cplx *y, std::size_t n);
double norm2(const cplx *a, std::size_t n);
}  // namespace avx2

const KernelTable &table_for(Backend backend);
const KernelTable &active();
bool backend_available(Backend backend);
/// Returns false (and leaves the selection unchanged) if the backend is not
/// supported on this CPU.
bool force_backend(Backend backend);
std::string_view backend_name(Backend backend);

inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dotc(a.data(), b.data(), a.size());
}
inline cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dotu(a.data(), b.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> a) { return active().norm2(a.data(), a.size()); }

}  // namespace vnchain::kernels
