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
#include "vnchain/premeasurement.hpp"
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

Premeasurement qubit_z(const Vector &ready = {1.0, 0.0}) {
    return build_ideal(SpectralObservable::computational("A", 2), SubsystemBasis::computational("B", 2),
                       StateVector({{"B", 2}}, ready));
}

Premeasurement random_ideal(Rng &rng, std::size_t da, std::size_t db, std::size_t k,
                            std::uint64_t completion_seed = 0) {
    std::vector<double> ev;
    for (std::size_t j = 0; j < k; ++j) {
        ev.push_back(0.5 * static_cast<double>(j) - 1.0);
    }
    const SpectralObservable measured("A", ev, random_decomposition(rng, da, k));
    const Matrix u = random_unitary(rng, db);
    std::vector<Vector> ptr;
    for (std::size_t j = 0; j < k; ++j) {
        ptr.push_back(u.column(j));
    }
    IdealOptions options;
    options.completion_seed = completion_seed;
    return build_ideal(measured, SubsystemBasis("B", db, ptr),
                       StateVector({{"B", db}}, random_state(rng, db)), options);
}

Vector oracle_ideal_output(const Premeasurement &pm, const Vector &phi) {
    Vector out(phi.size() * pm.instrument_dim());
    for (std::size_t k = 0; k < pm.measured().size(); ++k) {
        const Vector term =
            oracle::kron(oracle::apply(pm.measured().projector(k), phi), pm.pointer_states()[k]);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += term[i];
        }
    }
    return out;
}

double born(const Matrix &e, const Vector &phi) {
    double s = 0.0;
    for (cplx c : oracle::apply(e, phi)) {
        s += std::norm(c);
    }
    return s;
}

}  // namespace

TEST_CASE("qubit Z premeasurement entangles |+> with the pointer") {
    const Premeasurement pm = qubit_z();
    const StateVector out = evolve(pm, StateVector({{"A", 2}}, {r2, r2}));
    CHECK(max_abs_diff(out.span(), Vector{r2, 0.0, 0.0, r2}) < 1e-15);
    CHECK(pm.kind() == Premeasurement::Kind::Ideal);
    CHECK(unitarity_residual(pm.unitary()) < 1e-12);
}

TEST_CASE("sharp inputs leave the object unchanged and fix the pointer") {
    Rng rng(50);
    const Premeasurement pm = random_ideal(rng, 4, 5, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const Vector phi = normalized(pm.measured().projector(k) * random_vector(rng, 4));
        const StateVector out = evolve(pm, StateVector({{"A", 4}}, phi));
        CHECK(max_abs_diff(out.span(), kron(phi, pm.pointer_states()[k])) < 1e-12);
    }
}

TEST_CASE("ideal output equals the term-by-term sum") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const Premeasurement pm = random_ideal(rng, 3, 3, 2 + trial % 2);
        const Vector phi = random_state(rng, 3);
        const StateVector out = evolve(pm, StateVector({{"A", 3}}, phi));
        CHECK(oracle::max_diff(out.amplitudes(), oracle_ideal_output(pm, phi)) < 1e-10);
    }
}

TEST_CASE("too small an instrument or a misplaced pointer state is rejected") {
    CHECK(code_of([] {
              build_ideal(SpectralObservable::computational("A", 3),
                          SubsystemBasis("B", 2, {basis_vector(2, 0), basis_vector(2, 1)}),
                          StateVector::basis({{"B", 2}}, 0));
          }) == ErrorCode::InsufficientInstrument);
    IdealOptions options;
    options.pointer = SpectralObservable::computational("B", 2);
    CHECK(code_of([&] {
              build_ideal(SpectralObservable::computational("A", 2),
                          SubsystemBasis("B", 2, {Vector{r2, r2}, Vector{r2, -r2}}),
                          StateVector::basis({{"B", 2}}, 0), options);
          }) == ErrorCode::PointerOutsideRange);
    CHECK(code_of([] {
              build_ideal(SpectralObservable::computational("A", 2),
                          SubsystemBasis("B", 2, {basis_vector(2, 0)}),
                          StateVector::basis({{"B", 2}}, 0));
          }) == ErrorCode::Validation);
}

TEST_CASE("pointer states inside a coarse pointer observable are accepted") {
    // position 0 spans |0>,|1>; position 1 spans |2>
    const Matrix f0{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}};
    const Matrix f1{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    IdealOptions options;
    options.pointer = SpectralObservable("B", {0.0, 1.0}, {f0, f1});
    const Premeasurement pm =
        build_ideal(SpectralObservable::computational("A", 2),
                    SubsystemBasis("B", 3, {basis_vector(3, 2), Vector{r2, r2, 0.0}}),
                    StateVector::basis({{"B", 3}}, 0), options);
    CHECK(pm.index_map() == std::vector<std::size_t>{1, 0});
    CHECK(check_calibration(pm, 10).pass);
    CHECK(check_probability_reproduction(pm, 10).pass);
    CHECK(check_dynamical(pm, 10).pass);
}

TEST_CASE("default pointer has a complement branch when the instrument is larger") {
    Rng rng(52);
    const Premeasurement pm = random_ideal(rng, 2, 5, 2);
    CHECK(pm.pointer().size() == 3);
    CHECK(pm.index_map() == std::vector<std::size_t>{0, 1});
    CHECK(pm.pointer().branches()[2].rank == 3);
}

TEST_CASE("identity dressings reproduce the ideal unitary") {
    Rng rng(53);
    const Premeasurement ideal = random_ideal(rng, 3, 4, 3);
    std::vector<Dressing> ds(3, Dressing{Matrix::identity(3), Matrix::identity(4)});
    const Premeasurement exact = build_exact(ideal, ds);
    CHECK(max_abs_diff(exact.unitary(), ideal.unitary()) < 1e-12);
    CHECK(exact.kind() == Premeasurement::Kind::Exact);
}

TEST_CASE("flipping the object on branch 0 keeps calibration") {
    const Premeasurement ideal = qubit_z();
    const Matrix x{{0.0, 1.0}, {1.0, 0.0}};
    const Premeasurement exact = build_exact(
        ideal, {Dressing{x, Matrix::identity(2)}, Dressing{Matrix::identity(2), Matrix::identity(2)}});
    const Matrix p0 = oracle::ket_bra(basis_vector(2, 0), basis_vector(2, 0));
    const Matrix p1 = oracle::ket_bra(basis_vector(2, 1), basis_vector(2, 1));
    Matrix d = oracle::kron(x, p0);
    d += oracle::kron(Matrix::identity(2), p1);
    const Vector up_ready{1.0, 0.0, 0.0, 0.0};
    const Vector expected = oracle::apply(d, oracle::apply(ideal.unitary(), up_ready));
    const StateVector out = evolve(exact, StateVector::basis({{"A", 2}}, 0));
    CHECK(oracle::max_diff(out.amplitudes(), expected) < 1e-15);
    // spin up: pointer 0 with certainty, object flipped to |1>
    CHECK(max_abs_diff(out.span(), Vector{0.0, 0.0, 1.0, 0.0}) < 1e-15);
    CHECK(check_calibration(exact, 20).pass);
    CHECK(check_dynamical(exact, 20).pass);
}

TEST_CASE("random dressings keep the Born probabilities") {
    Rng rng(54);
    const Premeasurement ideal = random_ideal(rng, 2, 3, 2);
    const Premeasurement exact = build_exact(ideal, random_dressings(ideal, rng));
    const ConditionReport r = check_probability_reproduction(exact, 100, 3);
    CHECK(r.max_residual <= 1e-10);
    CHECK(r.samples == 200);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector phi = random_state(rng, 2);
        const StateVector out = evolve(exact, StateVector({{"A", 2}}, phi));
        const Matrix rho = oracle::ket_bra(out.amplitudes(), out.amplitudes());
        for (std::size_t k = 0; k < 2; ++k) {
            const Matrix f = oracle::embed(exact.pointer().projector(exact.index_map()[k]), {2, 3}, 1);
            CHECK(std::abs(oracle::trace(oracle::mul(f, rho)).real() -
                           born(exact.measured().projector(k), phi)) < 1e-10);
        }
    }
}

TEST_CASE("dressings must be unitary, one per branch, and stay in their pointer range") {
    const Premeasurement ideal = qubit_z();
    const Matrix x{{0.0, 1.0}, {1.0, 0.0}};
    const Matrix id = Matrix::identity(2);
    CHECK(code_of([&] { build_exact(ideal, {Dressing{id, x}, Dressing{id, id}}); }) ==
          ErrorCode::DressingLeak);
    CHECK(code_of([&] { build_exact(ideal, {Dressing{id, id}}); }) == ErrorCode::Validation);
    CHECK(code_of([&] {
              build_exact(ideal, {Dressing{Matrix{{1.0, 1.0}, {0.0, 1.0}}, id}, Dressing{id, id}});
          }) == ErrorCode::NotUnitary);
}

TEST_CASE("evolution preserves the norm and checks the object layout") {
    Rng rng(55);
    const Premeasurement ideal = random_ideal(rng, 3, 4, 2);
    const Premeasurement pm = build_exact(ideal, random_dressings(ideal, rng));
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector out = evolve(pm, StateVector({{"A", 3}}, random_state(rng, 3)));
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
        CHECK(out.layout() == SubsystemLayout{{"A", 3}, {"B", 4}});
    }
    CHECK(code_of([&] { evolve(pm, StateVector::basis({{"A", 2}}, 0)); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { evolve(pm, StateVector::basis({{"X", 3}}, 0)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("all three conditions hold for ideal and dressed premeasurements") {
    Rng rng(56);
    for (std::size_t da : {2, 3, 4}) {
        for (std::size_t db : {2, 3, 4, 6}) {
            const std::size_t k = std::min(da, db);
            const Premeasurement ideal = random_ideal(rng, da, db, k);
            const Premeasurement exact = build_exact(ideal, random_dressings(ideal, rng));
            for (const Premeasurement *pm : {&ideal, &exact}) {
                CHECK(check_calibration(*pm, 5, 1).max_residual <= 1e-9);
                CHECK(check_probability_reproduction(*pm, 5, 1).max_residual <= 1e-9);
                CHECK(check_dynamical(*pm, 5, 1).max_residual <= 1e-9);
            }
        }
    }
}

TEST_CASE("identity coupling with a ready state off the pointer axes is no measurement") {
    const Premeasurement pm = qubit_z({r2, r2}).with_unitary(Matrix::identity(4));
    CHECK(pm.kind() == Premeasurement::Kind::Custom);
    const ConditionReport r = check_calibration(pm, 10);
    CHECK(!r.pass);
    CHECK(r.max_residual > 0.5);
}

TEST_CASE("both sides of probability reproduction are 1/2 for |+>") {
    const Premeasurement pm = qubit_z();
    const Vector plus{r2, r2};
    const StateVector out = evolve(pm, StateVector({{"A", 2}}, plus));
    const BranchDecomposition bd = branch_decomposition(out, pm.pointer());
    REQUIRE(bd.branches.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(born(pm.measured().projector(k), plus) == doctest::Approx(0.5));
        CHECK(bd.branches[k].weight == doctest::Approx(0.5));
    }
}

TEST_CASE("phase-swap corruption breaks calibration and probability reproduction") {
    Rng rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const Premeasurement ideal = random_ideal(rng, 3, 4, 2 + trial % 2);
        const Premeasurement bad = phase_swap_corruption(ideal);
        CHECK(unitarity_residual(bad.unitary()) < 1e-10);
        CHECK(!check_calibration(bad, 5).pass);
        CHECK(!check_probability_reproduction(bad, 5).pass);
        CHECK(!check_dynamical(bad, 5).pass);
    }
}

TEST_CASE("random unitaries fail the dynamical condition") {
    Rng rng(58);
    const Premeasurement base = qubit_z();
    for (int trial = 0; trial < 100; ++trial) {
        const Premeasurement pm = base.with_unitary(random_unitary(rng, 4));
        CHECK(check_dynamical(pm, 3, trial).max_residual > 1e-3);
    }
}

TEST_CASE("zero trials is a validation error") {
    const Premeasurement pm = qubit_z();
    CHECK(code_of([&] { check_calibration(pm, 0); }) == ErrorCode::Validation);
    CHECK(code_of([&] { check_probability_reproduction(pm, 0); }) == ErrorCode::Validation);
    CHECK(code_of([&] { check_dynamical(pm, 0); }) == ErrorCode::Validation);
}

TEST_CASE("Lüders state on sharp, |+> and random inputs") {
    const SpectralObservable z = SpectralObservable::computational("A", 2);
    const StateVector up = StateVector::basis({{"A", 2}}, 0);
    CHECK(max_abs_diff(luders_state(up, z).matrix(), DensityOperator::pure(up).matrix()) < 1e-15);
    CHECK(max_abs_diff(luders_state(StateVector({{"A", 2}}, {r2, r2}), z).matrix(),
                       Matrix::identity(2) * 0.5) < 1e-15);
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const Premeasurement pm = random_ideal(rng, 4, 4, 3);
        const StateVector phi({{"A", 4}}, random_state(rng, 4));
        const StateVector out = evolve(pm, phi);
        const Matrix reduced = oracle::partial_trace(oracle::ket_bra(out.amplitudes(), out.amplitudes()),
                                                     {4, 4}, {true, false});
        CHECK(oracle::max_diff(luders_state(phi, pm.measured()).matrix(), reduced) < 1e-10);
    }
}

TEST_CASE("branch decomposition of sharp, |+> and random inputs") {
    const Premeasurement pm = qubit_z();
    const BranchDecomposition sharp = branch_decomposition(evolve(pm, StateVector::basis({{"A", 2}}, 1)), pm.pointer());
    REQUIRE(sharp.branches.size() == 1);
    CHECK(sharp.branches[0].index == 1);
    CHECK(sharp.branches[0].weight == doctest::Approx(1.0));
    CHECK(sharp.dropped_weight == 0.0);

    const BranchDecomposition plus = branch_decomposition(evolve(pm, StateVector({{"A", 2}}, {r2, r2})), pm.pointer());
    REQUIRE(plus.branches.size() == 2);
    CHECK(max_abs_diff(std::get<StateVector>(plus.branches[0].component).span(), Vector{1.0, 0.0, 0.0, 0.0}) < 1e-15);
    CHECK(max_abs_diff(std::get<StateVector>(plus.branches[1].component).span(), Vector{0.0, 0.0, 0.0, 1.0}) < 1e-15);

    Rng rng(60);
    for (int trial = 0; trial < 20; ++trial) {
        const Premeasurement ideal = random_ideal(rng, 3, 5, 3);
        const Premeasurement exact = build_exact(ideal, random_dressings(ideal, rng));
        const Vector phi = random_state(rng, 3);
        const BranchDecomposition bd = branch_decomposition(evolve(exact, StateVector({{"A", 3}}, phi)), exact.pointer());
        CHECK(std::abs(bd.total_weight() - 1.0) < 1e-10);
        for (const auto &b : bd.branches) {
            for (std::size_t k = 0; k < 3; ++k) {
                if (exact.index_map()[k] == b.index) {
                    CHECK(std::abs(b.weight - born(exact.measured().projector(k), phi)) < 1e-10);
                }
            }
            CHECK(std::abs(std::get<StateVector>(b.component).norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("pointer projectors resolve the final state exactly") {
    Rng rng(61);
    const Premeasurement pm = random_ideal(rng, 3, 6, 3);
    const StateVector out = evolve(pm, StateVector({{"A", 3}}, random_state(rng, 3)));
    const Label b[] = {"B"};
    Vector sum(out.dim());
    for (const auto &br : pm.pointer().branches()) {
        sum = add(sum, apply_local(br.projector, b, out.layout(), out.span()));
    }
    CHECK(max_abs_diff(sum, out.span()) <= 1e-12);
}

TEST_CASE("the unitary completion does not affect the premeasurement") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng r1(seed);
        Rng r2(seed);
        const Premeasurement canonical = random_ideal(r1, 3, 4, 2, 0);
        const Premeasurement other = random_ideal(r2, 3, 4, 2, 99 + seed);
        CHECK(max_abs_diff(canonical.unitary(), other.unitary()) > 1e-6);
        CHECK(unitarity_residual(other.unitary()) < 1e-10);
        Rng rng(seed + 100);
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector phi({{"A", 3}}, random_state(rng, 3));
            CHECK(max_abs_diff(evolve(canonical, phi).span(), evolve(other, phi).span()) < 1e-12);
        }
        CHECK(check_dynamical(other, 5).pass);
    }
}
