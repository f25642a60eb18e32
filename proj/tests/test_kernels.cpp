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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vnchain/kernels.hpp"
#include "vnchain/linalg.hpp"
#include "vnchain/random.hpp"

using namespace vnchain;
namespace k = vnchain::kernels;

namespace {

cplx naive_dotc(const Vector &a, const Vector &b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

struct BackendGuard {
    k::Backend saved = k::active().backend;
    ~BackendGuard() { k::force_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
    Rng rng(1);
    for (std::size_t n = 0; n < 20; ++n) {
        const Vector a = random_vector(rng, n);
        const Vector b = random_vector(rng, n);
        CHECK(std::abs(k::scalar::dotc(a.data(), b.data(), n) - naive_dotc(a, b)) < 1e-13);
        CHECK(std::abs(k::scalar::norm2(a.data(), n) - naive_dotc(a, a).real()) < 1e-13);
    }
}

TEST_CASE("avx2 kernels agree with scalar kernels on every length and alignment") {
    if (!k::avx2::supported()) {
        MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
        return;
    }
    Rng rng(2);
    for (std::size_t n = 0; n < 67; ++n) {
        for (std::size_t offset = 0; offset < 2; ++offset) {
            Vector a = random_vector(rng, n + offset);
            Vector b = random_vector(rng, n + offset);
            const cplx *pa = a.data() + offset;
            const cplx *pb = b.data() + offset;
            const double scale = 1.0 + std::sqrt(static_cast<double>(n));
            CHECK(std::abs(k::scalar::dotc(pa, pb, n) - k::avx2::dotc(pa, pb, n)) < 1e-13 * scale * scale);
            CHECK(std::abs(k::scalar::dotu(pa, pb, n) - k::avx2::dotu(pa, pb, n)) < 1e-13 * scale * scale);
            CHECK(std::abs(k::scalar::norm2(pa, n) - k::avx2::norm2(pa, n)) < 1e-13 * scale * scale);
            const cplx alpha = rng.complex_normal();
            Vector y1 = b;
            Vector y2 = b;
            k::scalar::axpy(alpha, pa, y1.data() + offset, n);
            k::avx2::axpy(alpha, pa, y2.data() + offset, n);
            CHECK(max_abs_diff(y1, y2) < 1e-13 * scale);
        }
    }
}

TEST_CASE("forcing a backend switches the dispatch table") {
    BackendGuard guard;
    CHECK(k::force_backend(k::Backend::Scalar));
    CHECK(k::active().backend == k::Backend::Scalar);
    CHECK(k::backend_name(k::Backend::Scalar) == "scalar");
    CHECK(k::backend_name(k::Backend::Avx2) == "avx2");
    CHECK(k::force_backend(k::Backend::Avx2) == k::backend_available(k::Backend::Avx2));
}

TEST_CASE("matrix products are identical in substance under both backends") {
    if (!k::backend_available(k::Backend::Avx2)) {
        return;
    }
    BackendGuard guard;
    Rng rng(3);
    const Matrix a = random_unitary(rng, 13);
    const Matrix b = random_hermitian(rng, 13);
    const Vector v = random_vector(rng, 13);
    k::force_backend(k::Backend::Scalar);
    const Matrix ab_scalar = a * b;
    const Vector av_scalar = a * v;
    k::force_backend(k::Backend::Avx2);
    const Matrix ab_avx = a * b;
    const Vector av_avx = a * v;
    CHECK(max_abs_diff(ab_scalar, ab_avx) < 1e-13);
    CHECK(max_abs_diff(av_scalar, av_avx) < 1e-13);
    CHECK(oracle::max_diff(ab_avx, oracle::mul(a, b)) < 1e-13);
}
