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
#include "vnchain/hilbert.hpp"
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

const double r2 = 1.0 / std::sqrt(2.0);

StateVector bell() { return {{{"A", 2}, {"B", 2}}, {r2, 0.0, 0.0, r2}}; }

}  // namespace

TEST_CASE("layouts reject duplicate labels and zero dimensions") {
    CHECK(code_of([] { SubsystemLayout({{"A", 2}, {"A", 3}}); }) == ErrorCode::LayoutConflict);
    CHECK(code_of([] { SubsystemLayout({{"A", 0}}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { SubsystemLayout({{"", 2}}); }) == ErrorCode::Validation);
    const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 4}};
    CHECK(l.total_dim() == 24);
    CHECK(l.stride(0) == 12);
    CHECK(l.stride(2) == 1);
    CHECK(code_of([&] { l.position("D"); }) == ErrorCode::UnknownLabel);
}

TEST_CASE("split_indices decomposes every flat index") {
    const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
    const Label sel[] = {"C", "A"};
    const IndexSplit s = split_indices(l, sel);
    std::vector<int> seen(l.total_dim(), 0);
    for (std::size_t a : s.selected_offsets)
        for (std::size_t b : s.rest_offsets)
            ++seen[a + b];
    for (int c : seen)
        CHECK(c == 1);
}

TEST_CASE("tensor of basis states is a basis state") {
    const StateVector z = StateVector::basis({{"A", 2}}, 0);
    const StateVector w = StateVector::basis({{"B", 2}}, 0);
    const StateVector t = tensor(z, w);
    CHECK(max_abs_diff(t.span(), basis_vector(4, 0)) == 0.0);
}

TEST_CASE("tensor of maximally mixed states is maximally mixed") {
    const DensityOperator t =
        tensor(DensityOperator::maximally_mixed({{"A", 2}}), DensityOperator::maximally_mixed({{"B", 3}}));
    CHECK(max_abs_diff(t.matrix(), Matrix::identity(6) * (1.0 / 6.0)) < 1e-15);
}

TEST_CASE("tensor norm is multiplicative") {
    Rng rng(20);
    const Vector a = random_vector(rng, 3);
    const Vector b = random_vector(rng, 2);
    const StateVector t = tensor(StateVector::unnormalized({{"A", 3}}, a),
                                 StateVector::unnormalized({{"B", 2}}, b));
    CHECK(t.norm() == doctest::Approx(oracle::norm(a) * oracle::norm(b)).epsilon(1e-14));
    CHECK(!t.is_normalized());
}

TEST_CASE("tensor rejects a shared label") {
    const StateVector a = StateVector::basis({{"A", 2}}, 0);
    CHECK(code_of([&] { tensor(a, a); }) == ErrorCode::LayoutConflict);
}

TEST_CASE("partial trace of a product state recovers the factor") {
    Rng rng(21);
    const StateVector a({{"A", 3}}, random_state(rng, 3));
    const StateVector b({{"B", 2}}, random_state(rng, 2));
    const Label traced[] = {"B"};
    const DensityOperator r = partial_trace(tensor(a, b), traced);
    CHECK(max_abs_diff(r.matrix(), outer(a.span(), a.span())) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    const Label traced[] = {"B"};
    CHECK(max_abs_diff(partial_trace(bell(), traced).matrix(), Matrix::identity(2) * 0.5) < 1e-15);
}

TEST_CASE("sequential partial traces equal the joint trace and the brute-force oracle") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const SubsystemLayout l{{"A", 2}, {"B", 2}, {"C", 2}};
        const StateVector psi(l, random_state(rng, 8));
        const Label c[] = {"C"};
        const Label b[] = {"B"};
        const Label bc[] = {"B", "C"};
        const DensityOperator stepwise = partial_trace(partial_trace(psi, c), b);
        const DensityOperator joint = partial_trace(psi, bc);
        CHECK(max_abs_diff(stepwise.matrix(), joint.matrix()) < 1e-14);
        const Matrix rho = oracle::ket_bra(psi.amplitudes(), psi.amplitudes());
        CHECK(oracle::max_diff(joint.matrix(), oracle::partial_trace(rho, {2, 2, 2}, {true, false, false})) < 1e-14);
    }
}

TEST_CASE("partial trace keeps trace and positivity and matches brute force on mixed inputs") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<std::size_t> dims{2, 3, 2};
        const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
        const DensityOperator rho(l, random_density(rng, 12));
        const Label b[] = {"B"};
        const DensityOperator r = partial_trace(rho, b);
        CHECK(std::abs(r.matrix().trace() - cplx(1.0)) < 1e-12);
        CHECK(eigh(r.matrix()).values.front() >= -1e-9);
        CHECK(oracle::max_diff(r.matrix(), oracle::partial_trace(rho.matrix(), dims, {true, false, true})) < 1e-14);
    }
}

TEST_CASE("tracing out everything is a degenerate layout") {
    const Label ab[] = {"A", "B"};
    CHECK(code_of([&] { partial_trace(bell(), ab); }) == ErrorCode::DegenerateLayout);
}

TEST_CASE("partial scalar product on product and Bell states") {
    Rng rng(24);
    const Vector a = random_state(rng, 3);
    const Vector b = random_state(rng, 2);
    const StateVector prod({{"A", 3}, {"B", 2}}, kron(a, b));
    const StateVector r = partial_scalar_product(b, "B", prod);
    CHECK(max_abs_diff(r.span(), a) < 1e-14);
    CHECK(!r.is_normalized());
    const StateVector one = partial_scalar_product(basis_vector(2, 1), "B", bell());
    CHECK(max_abs_diff(one.span(), Vector{0.0, r2}) < 1e-15);
    CHECK(code_of([&] { partial_scalar_product(Vector(3), "B", bell()); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("partial scalar product matches contraction and basis-expansion coefficients") {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const SubsystemLayout l{{"1", 3}, {"2", 4}};
        const StateVector psi(l, random_state(rng, 12));
        const SubsystemBasis basis("2", 4, {random_state(rng, 4)});
        const auto terms = expand_in_basis(psi, basis);
        REQUIRE(terms.size() == 4);
        const SubsystemBasis full = basis.completed();
        for (std::size_t n = 0; n < 4; ++n) {
            const StateVector c = partial_scalar_product(full.vectors()[n], "2", psi);
            CHECK(max_abs_diff(c.span(), terms[n].coefficient.span()) < 1e-12);
            CHECK(oracle::max_diff(c.amplitudes(), oracle::contract(full.vectors()[n], psi.amplitudes(), {3, 4}, 1)) < 1e-14);
        }
    }
}

TEST_CASE("basis expansion reconstructs the state and its coefficients carry unit norm") {
    Rng rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
        const StateVector psi(l, random_state(rng, 12));
        const Matrix u = random_unitary(rng, 3);
        const SubsystemBasis basis("B", 3, {u.column(0), u.column(1), u.column(2)});
        const auto terms = expand_in_basis(psi, basis);
        double total = 0.0;
        for (const auto &t : terms) {
            total += t.coefficient.norm() * t.coefficient.norm();
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
        const StateVector back = resum_expansion(terms, basis, l);
        CHECK(max_abs_diff(back.span(), psi.span()) < 1e-10);
    }
}

TEST_CASE("product state has one nonzero coefficient when the basis holds its factor") {
    Rng rng(27);
    const Vector a = random_state(rng, 2);
    const Vector b = random_state(rng, 3);
    const StateVector psi({{"A", 2}, {"B", 3}}, kron(a, b));
    const auto terms = expand_in_basis(psi, SubsystemBasis("B", 3, {b}));
    CHECK(terms[0].coefficient.norm() == doctest::Approx(1.0));
    CHECK(terms[1].coefficient.norm() < 1e-14);
    CHECK(terms[2].coefficient.norm() < 1e-14);
}

TEST_CASE("non-orthonormal basis vectors are rejected") {
    CHECK(code_of([] {
              SubsystemBasis("B", 2, {basis_vector(2, 0), normalized(Vector{1.0, 1.0})});
          }) == ErrorCode::NotOrthonormal);
    CHECK(code_of([] { SubsystemBasis("B", 2, {Vector{2.0, 0.0}}); }) == ErrorCode::NotOrthonormal);
}

TEST_CASE("embedding identity and Pauli-Z") {
    const SubsystemLayout l{{"A", 2}, {"B", 2}};
    CHECK(max_abs_diff(embed_operator(Matrix::identity(2), "B", l), Matrix::identity(4)) == 0.0);
    const Matrix z{{1.0, 0.0}, {0.0, -1.0}};
    const double d[] = {1.0, 1.0, -1.0, -1.0};
    CHECK(max_abs_diff(embed_operator(z, "A", l), Matrix::diagonal(d)) == 0.0);
    CHECK(code_of([&] { embed_operator(Matrix::identity(3), "A", l); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("embedded operator expectation equals the reduced-state expectation") {
    Rng rng(28);
    const std::vector<std::size_t> dims{2, 3, 2};
    const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator rho(l, random_density(rng, 12));
        const Matrix op = random_hermitian(rng, 3) + random_unitary(rng, 3);
        const Matrix big = embed_operator(op, "B", l);
        CHECK(oracle::max_diff(big, oracle::embed(op, dims, 1)) == 0.0);
        const Label rest[] = {"A", "C"};
        const cplx lhs = (big * rho.matrix()).trace();
        const cplx rhs = (op * partial_trace(rho, rest).matrix()).trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("apply_local agrees with multiplication by the embedded operator") {
    Rng rng(29);
    const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
    const Matrix op = random_unitary(rng, 4);
    const Vector v = random_vector(rng, 12);
    const Label ca[] = {"C", "A"};
    const Vector local = apply_local(op, ca, l, v);
    const Matrix big = permute(SubsystemLayout{{"C", 2}, {"A", 2}, {"B", 3}},
                               kron(op, Matrix::identity(3)),
                               std::vector<Label>{"A", "B", "C"});
    CHECK(max_abs_diff(local, big * v) < 1e-13);
}

TEST_CASE("operators commute under the partial trace over their own factor") {
    Rng rng(30);
    for (std::size_t da = 1; da <= 4; ++da) {
        for (std::size_t db = 1; db <= 4; ++db) {
            const SubsystemLayout l{{"A", da}, {"B", db}};
            const Matrix x = random_hermitian(rng, da * db) + random_unitary(rng, da * db);
            const Matrix y = embed_operator(random_unitary(rng, db), "B", l);
            const Label b[] = {"B"};
            CHECK(max_abs_diff(partial_trace(l, y * x, b), partial_trace(l, x * y, b)) < 1e-10);
        }
    }
}

TEST_CASE("permutation reorders factors and round-trips") {
    Rng rng(31);
    const SubsystemLayout l{{"A", 2}, {"B", 3}, {"C", 2}};
    const Vector a = random_state(rng, 2);
    const Vector b = random_state(rng, 3);
    const Vector c = random_state(rng, 2);
    const StateVector psi(l, kron(kron(a, b), c));
    const Label order[] = {"C", "A", "B"};
    const StateVector p = permute(psi, order);
    CHECK(p.layout().labels() == std::vector<Label>{"C", "A", "B"});
    CHECK(max_abs_diff(p.span(), kron(kron(c, a), b)) < 1e-15);
    const Label back[] = {"A", "B", "C"};
    CHECK(max_abs_diff(permute(p, back).span(), psi.span()) == 0.0);
    const DensityOperator rho(l, random_density(rng, 12));
    const DensityOperator rp = permute(permute(rho, order), back);
    CHECK(max_abs_diff(rp.matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("states and densities validate their invariants") {
    CHECK(code_of([] { StateVector({{"A", 2}}, {1.0, 1.0}); }) == ErrorCode::NotNormalized);
    CHECK(code_of([] { StateVector({{"A", 2}}, {1.0}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { DensityOperator({{"A", 2}}, Matrix{{0.5, 0.1}, {0.0, 0.5}}); }) ==
          ErrorCode::NotHermitian);
    CHECK(code_of([] { DensityOperator({{"A", 2}}, Matrix{{1.5, 0.0}, {0.0, -0.5}}); }) ==
          ErrorCode::NotPositive);
    CHECK(code_of([] { DensityOperator({{"A", 2}}, Matrix{{0.6, 0.0}, {0.0, 0.6}}); }) ==
          ErrorCode::NotNormalized);
    CHECK(DensityOperator::maximally_mixed({{"A", 4}}).purity() == doctest::Approx(0.25));
}
