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

#include <functional>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vnchain/error.hpp"
#include "vnchain/observables.hpp"
#include "vnchain/random.hpp"

using namespace vnchain;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Validation;
}

std::size_t rank_of(const Matrix &p) {
    std::size_t r = 0;
    for (double v : eigh(p).values) {
        r += v > 0.5 ? 1 : 0;
    }
    return r;
}

}  // namespace

TEST_CASE("Pauli-Z splits into -1 on |1> and +1 on |0>") {
    const SpectralObservable z = observable_from_matrix("A", Matrix{{1.0, 0.0}, {0.0, -1.0}});
    REQUIRE(z.size() == 2);
    CHECK(z.eigenvalue(0) == doctest::Approx(-1.0));
    CHECK(z.eigenvalue(1) == doctest::Approx(1.0));
    CHECK(max_abs_diff(z.projector(0), Matrix{{0.0, 0.0}, {0.0, 1.0}}) < 1e-14);
    CHECK(max_abs_diff(z.projector(1), Matrix{{1.0, 0.0}, {0.0, 0.0}}) < 1e-14);
}

TEST_CASE("a fully degenerate matrix merges into one branch") {
    const SpectralObservable id = observable_from_matrix("A", Matrix::identity(3));
    REQUIRE(id.size() == 1);
    CHECK(id.eigenvalue(0) == doctest::Approx(1.0));
    CHECK(id.branches()[0].rank == 3);
    CHECK(max_abs_diff(id.projector(0), Matrix::identity(3)) < 1e-14);
}

TEST_CASE("nearly equal eigenvalues merge, separated ones do not") {
    const double close[] = {0.0, 1e-10, 1.0};
    CHECK(observable_from_matrix("A", Matrix::diagonal(close)).size() == 2);
    const double apart[] = {0.0, 1e-6, 1.0};
    CHECK(observable_from_matrix("A", Matrix::diagonal(apart)).size() == 3);
}

TEST_CASE("spectral reconstruction and idempotent rebuild for random Hermitian matrices") {
    Rng rng(40);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix h = random_hermitian(rng, n);
            const SpectralObservable o = observable_from_matrix("A", h);
            CHECK(o.size() <= n);
            CHECK(max_abs_diff(o.matrix(), h) < 1e-9);
            const SpectralObservable again = observable_from_matrix("A", o.matrix());
            REQUIRE(again.size() == o.size());
            for (std::size_t k = 0; k < o.size(); ++k) {
                CHECK(std::abs(again.eigenvalue(k) - o.eigenvalue(k)) < 1e-8);
                CHECK(max_abs_diff(again.projector(k), o.projector(k)) < 1e-9);
            }
            CHECK(check_decomposition(o.decomposition()).pass);
        }
    }
}

TEST_CASE("degenerate random observables keep block ranks") {
    Rng rng(41);
    const auto blocks = random_decomposition(rng, 6, 3);
    Matrix h(6, 6);
    for (std::size_t k = 0; k < 3; ++k) {
        h += blocks[k] * static_cast<double>(k * 2);
    }
    const SpectralObservable o = observable_from_matrix("A", h);
    REQUIRE(o.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(o.branches()[k].rank == rank_of(blocks[k]));
        CHECK(max_abs_diff(o.projector(k), blocks[k]) < 1e-9);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    CHECK(code_of([] { observable_from_matrix("A", Matrix{{0.0, 1.0}, {0.0, 0.0}}); }) ==
          ErrorCode::NotHermitian);
}

TEST_CASE("spectral constructor enforces its invariants") {
    const Matrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix p1{{0.0, 0.0}, {0.0, 1.0}};
    CHECK(code_of([&] { SpectralObservable("A", {1.0, 1.0}, {p0, p1}); }) == ErrorCode::Validation);
    CHECK(code_of([&] { SpectralObservable("A", {0.0, 1.0}, {p0, Matrix(2, 2)}); }) ==
          ErrorCode::InvalidDecomposition);
    CHECK(code_of([&] { SpectralObservable("A", {0.0}, {p0}); }) == ErrorCode::InvalidDecomposition);
    CHECK(code_of([&] { SpectralObservable("A", {0.0, 1.0}, {p0, Matrix{{0.0, 1.0}, {0.0, 0.0}}}); }) ==
          ErrorCode::NotProjector);
    const SpectralObservable sorted("A", {5.0, -2.0}, {p0, p1});
    CHECK(sorted.eigenvalue(0) == -2.0);
    CHECK(max_abs_diff(sorted.projector(0), p1) == 0.0);
}

TEST_CASE("computational observable puts eigenvalue k on |k><k|") {
    const SpectralObservable c = SpectralObservable::computational("B", 4);
    REQUIRE(c.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(c.eigenvalue(k) == static_cast<double>(k));
        CHECK(max_abs_diff(c.projector(k), outer(basis_vector(4, k), basis_vector(4, k))) == 0.0);
    }
}

TEST_CASE("check_decomposition on valid, duplicated and conjugated families") {
    const Matrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix p1{{0.0, 0.0}, {0.0, 1.0}};
    const DecompositionReport good = check_decomposition({"A", {p0, p1}});
    CHECK(good.pass);
    CHECK(good.completeness < 1e-15);
    CHECK(good.orthogonality < 1e-15);
    const DecompositionReport dup = check_decomposition({"A", {p0, p0}});
    CHECK(!dup.pass);
    CHECK(dup.completeness > 0.5);
    CHECK(dup.orthogonality > 0.5);
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix u = random_unitary(rng, 5);
        std::vector<Matrix> ps;
        for (const auto &p : random_decomposition(rng, 5, 3)) {
            ps.push_back(u * p * u.adjoint());
        }
        CHECK(check_decomposition({"A", ps}).pass);
    }
}

TEST_CASE("event complement") {
    CHECK(max_abs_diff(event_complement(Matrix(3, 3)), Matrix::identity(3)) == 0.0);
    CHECK(max_abs_diff(event_complement(Matrix::identity(3)), Matrix(3, 3)) == 0.0);
    Rng rng(43);
    for (std::size_t d = 1; d <= 5; ++d) {
        for (std::size_t r = 0; r <= d; ++r) {
            const Matrix p = random_projector(rng, d, r);
            const Matrix c = event_complement(p);
            CHECK(rank_of(c) == d - r);
            CHECK(check_decomposition({"A", {p, c}}).pass);
        }
    }
    CHECK(code_of([] { event_complement(Matrix{{0.5, 0.0}, {0.0, 0.0}}); }) == ErrorCode::NotProjector);
}
