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

#include "vnchain/premeasurement.hpp"

#include <algorithm>
#include <cmath>

#include "vnchain/error.hpp"
#include "vnchain/kernels.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

namespace {

// Columns of a unitary mapping `domain` onto `codomain` (both orthonormal
// families of equal size), completed on the orthogonal complements.
Matrix complete_unitary(std::vector<Vector> domain, std::vector<Vector> codomain, std::size_t n,
                        std::uint64_t seed) {
    const std::size_t fixed = domain.size();
    std::vector<Vector> candidates;
    if (seed == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            candidates.push_back(basis_vector(n, i));
        }
        extend_orthonormal(domain, candidates, n, 1e-6);
        extend_orthonormal(codomain, candidates, n, 1e-6);
    } else {
        Rng rng(seed);
        while (domain.size() < n || codomain.size() < n) {
            const Vector c1 = random_vector(rng, n);
            const Vector c2 = random_vector(rng, n);
            extend_orthonormal(domain, std::span<const Vector>(&c1, 1), n, 1e-6);
            extend_orthonormal(codomain, std::span<const Vector>(&c2, 1), n, 1e-6);
        }
    }
    if (domain.size() != n || codomain.size() != n || fixed > n) {
        fail(ErrorCode::NotUnitary, "unitary completion failed");
    }
    Matrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        u += outer(codomain[j], domain[j]);
    }
    return u;
}

Vector first_nonzero_column(const Matrix &p) {
    for (std::size_t c = 0; c < p.cols(); ++c) {
        const Vector v = p.column(c);
        if (norm(v) > 1e-6) {
            return normalized(v);
        }
    }
    fail(ErrorCode::InvalidDecomposition, "zero projector");
}

Vector object_ready(const Premeasurement &pm, std::span<const cplx> phi) {
    return kron(phi, pm.ready_state().span());
}

Vector pointer_projected(const Premeasurement &pm, std::size_t pointer_branch,
                         std::span<const cplx> composite) {
    const Label labels[] = {pm.instrument_label()};
    return apply_local(pm.pointer().projector(pointer_branch), labels, pm.layout(), composite);
}

ConditionReport make_report(std::string name, double residual, std::size_t samples,
                            double tolerance) {
    return {std::move(name), residual, samples, tolerance, residual <= tolerance};
}

void require_trials(std::size_t trials) {
    if (trials == 0) {
        fail(ErrorCode::Validation, "condition checks need at least one trial");
    }
}

}  // namespace

SubsystemLayout Premeasurement::layout() const {
    return SubsystemLayout{{object_label_, object_dim()}, {instrument_label_, instrument_dim()}};
}

Premeasurement Premeasurement::with_unitary(Matrix unitary, const Tolerances &tol) const {
    const std::size_t n = object_dim() * instrument_dim();
    if (unitary.rows() != n || unitary.cols() != n) {
        fail(ErrorCode::DimensionMismatch, "coupling unitary has the wrong size");
    }
    if (unitarity_residual(unitary) > tol.unitary) {
        fail(ErrorCode::NotUnitary, "coupling operator is not unitary");
    }
    Premeasurement copy = *this;
    copy.unitary_ = std::move(unitary);
    copy.kind_ = Kind::Custom;
    copy.pointer_states_.clear();
    return copy;
}

Premeasurement build_ideal(const SpectralObservable &measured, const SubsystemBasis &pointer_states,
                           const StateVector &ready_state, const IdealOptions &options,
                           const Tolerances &tol) {
    const std::size_t branches = measured.size();
    const std::size_t dim_b = pointer_states.dim();
    if (dim_b < branches) {
        fail(ErrorCode::InsufficientInstrument,
             "instrument dimension " + std::to_string(dim_b) + " is below the branch count " +
                 std::to_string(branches));
    }
    if (pointer_states.size() != branches) {
        fail(ErrorCode::Validation, "need exactly one pointer state per measured branch");
    }
    const Label &instrument = pointer_states.subsystem();
    if (instrument == measured.subsystem()) {
        fail(ErrorCode::LayoutConflict, "object and instrument labels coincide");
    }
    const SubsystemLayout instrument_layout{{instrument, dim_b}};
    if (!(ready_state.layout() == instrument_layout)) {
        fail(ErrorCode::DimensionMismatch, "ready state must live on " + instrument_layout.describe());
    }
    if (!ready_state.is_normalized()) {
        fail(ErrorCode::NotNormalized, "ready state must be normalized");
    }

    SpectralObservable pointer;
    if (options.pointer) {
        pointer = *options.pointer;
        if (pointer.subsystem() != instrument || pointer.dim() != dim_b) {
            fail(ErrorCode::ObservableMismatch, "pointer observable is not on the instrument");
        }
    } else {
        std::vector<double> values;
        std::vector<Matrix> projectors;
        Matrix rest = Matrix::identity(dim_b);
        for (std::size_t k = 0; k < branches; ++k) {
            const Vector &v = pointer_states.vectors()[k];
            values.push_back(static_cast<double>(k));
            projectors.push_back(outer(v, v));
            rest -= projectors.back();
        }
        if (dim_b > branches) {
            values.push_back(static_cast<double>(branches));
            projectors.push_back(std::move(rest));
        }
        pointer = SpectralObservable(instrument, std::move(values), std::move(projectors), tol);
    }

    std::vector<std::size_t> index_map;
    for (std::size_t k = 0; k < branches; ++k) {
        const Vector &v = pointer_states.vectors()[k];
        std::optional<std::size_t> found;
        for (std::size_t j = 0; j < pointer.size(); ++j) {
            if (max_abs_diff(pointer.projector(j) * v, v) <= 1e-9) {
                found = j;
                break;
            }
        }
        if (!found) {
            fail(ErrorCode::PointerOutsideRange,
                 "pointer state " + std::to_string(k) + " lies in no pointer projector range");
        }
        if (std::find(index_map.begin(), index_map.end(), *found) != index_map.end()) {
            fail(ErrorCode::Validation, "two pointer states share pointer position " +
                                            std::to_string(*found));
        }
        index_map.push_back(*found);
    }

    const std::size_t dim_a = measured.dim();
    const std::size_t n = dim_a * dim_b;
    std::vector<Vector> domain;
    std::vector<Vector> images;
    for (std::size_t i = 0; i < dim_a; ++i) {
        const Vector e = basis_vector(dim_a, i);
        domain.push_back(kron(e, ready_state.span()));
        Vector image(n);
        for (std::size_t k = 0; k < branches; ++k) {
            const Vector projected = measured.projector(k) * e;
            const Vector term = kron(projected, pointer_states.vectors()[k]);
            image = add(image, term);
        }
        images.push_back(std::move(image));
    }

    Premeasurement pm;
    pm.object_label_ = measured.subsystem();
    pm.instrument_label_ = instrument;
    pm.measured_ = measured;
    pm.pointer_ = std::move(pointer);
    pm.ready_state_ = ready_state;
    pm.unitary_ = complete_unitary(std::move(domain), std::move(images), n, options.completion_seed);
    pm.index_map_ = std::move(index_map);
    pm.pointer_states_ = pointer_states.vectors();
    pm.kind_ = Premeasurement::Kind::Ideal;
    if (unitarity_residual(pm.unitary_) > tol.unitary) {
        fail(ErrorCode::NotUnitary, "ideal premeasurement unitary lost orthonormality");
    }
    return pm;
}

std::vector<Dressing> random_dressings(const Premeasurement &base, Rng &rng) {
    const std::size_t dim_b = base.instrument_dim();
    std::vector<Dressing> out;
    for (std::size_t k = 0; k < base.measured().size(); ++k) {
        const Matrix &f = base.pointer().projector(base.index_map()[k]);
        const HermitianEigen eig = eigh(f);
        std::vector<Vector> range;
        for (std::size_t j = 0; j < dim_b; ++j) {
            if (eig.values[j] > 0.5) {
                range.push_back(eig.vectors.column(j));
            }
        }
        const Matrix q = Matrix::from_columns(range);
        const Matrix inside = q * random_unitary(rng, range.size()) * q.adjoint();
        out.push_back({random_unitary(rng, base.object_dim()),
                       inside + (Matrix::identity(dim_b) - f)});
    }
    return out;
}

Premeasurement build_exact(const Premeasurement &base, const std::vector<Dressing> &dressings,
                           const Tolerances &tol) {
    const std::size_t branches = base.measured().size();
    if (dressings.size() != branches) {
        fail(ErrorCode::Validation, "need one dressing per measured branch");
    }
    const std::size_t dim_a = base.object_dim();
    const std::size_t dim_b = base.instrument_dim();
    Matrix block(dim_a * dim_b, dim_a * dim_b);
    Matrix unused = Matrix::identity(dim_b);
    for (std::size_t k = 0; k < branches; ++k) {
        const Dressing &d = dressings[k];
        const Matrix &f = base.pointer().projector(base.index_map()[k]);
        if (d.object.rows() != dim_a || d.object.cols() != dim_a || d.instrument.rows() != dim_b ||
            d.instrument.cols() != dim_b) {
            fail(ErrorCode::DimensionMismatch, "dressing " + std::to_string(k) + " has wrong size");
        }
        if (unitarity_residual(d.object) > tol.unitary ||
            unitarity_residual(d.instrument) > tol.unitary) {
            fail(ErrorCode::NotUnitary, "dressing " + std::to_string(k) + " is not unitary");
        }
        const Matrix wf = d.instrument * f;
        const double leak = frobenius_norm((Matrix::identity(dim_b) - f) * wf);
        if (leak > tol.unitary) {
            fail(ErrorCode::DressingLeak, "instrument dressing " + std::to_string(k) +
                                              " leaks out of its pointer range (residual " +
                                              std::to_string(leak) + ")");
        }
        block += kron(d.object, wf);
        unused -= f;
    }
    block += kron(Matrix::identity(dim_a), unused);

    Premeasurement pm = base;
    pm.unitary_ = block * base.unitary();
    pm.kind_ = Premeasurement::Kind::Exact;
    pm.pointer_states_.clear();
    if (unitarity_residual(pm.unitary_) > tol.unitary) {
        fail(ErrorCode::NotUnitary, "dressed unitary is not unitary");
    }
    return pm;
}

StateVector evolve(const Premeasurement &pm, const StateVector &object_state) {
    const SubsystemLayout object_layout{{pm.object_label(), pm.object_dim()}};
    if (!(object_state.layout() == object_layout)) {
        fail(ErrorCode::DimensionMismatch,
             "object state must live on " + object_layout.describe() + ", got " +
                 object_state.layout().describe());
    }
    if (!object_state.is_normalized()) {
        fail(ErrorCode::NotNormalized, "object state must be normalized");
    }
    return {pm.layout(), pm.unitary() * object_ready(pm, object_state.span())};
}

ConditionReport check_calibration(const Premeasurement &pm, std::size_t trials, std::uint64_t seed,
                                  double tolerance) {
    require_trials(trials);
    Rng rng(seed);
    double worst = 0.0;
    std::size_t samples = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t k = 0; k < pm.measured().size(); ++k) {
            Vector phi = pm.measured().projector(k) * random_vector(rng, pm.object_dim());
            phi = normalized(phi);
            const Vector out = pm.unitary() * object_ready(pm, phi);
            const Vector projected = pointer_projected(pm, pm.index_map()[k], out);
            worst = std::max(worst, norm(subtract(projected, out)));
            ++samples;
        }
    }
    return make_report("calibration", worst, samples, tolerance);
}

ConditionReport check_probability_reproduction(const Premeasurement &pm, std::size_t trials,
                                               std::uint64_t seed, double tolerance) {
    require_trials(trials);
    Rng rng(seed);
    double worst = 0.0;
    std::size_t samples = 0;
    std::vector<bool> used(pm.pointer().size(), false);
    for (std::size_t j : pm.index_map()) {
        used[j] = true;
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const Vector phi = random_state(rng, pm.object_dim());
        const Vector out = pm.unitary() * object_ready(pm, phi);
        for (std::size_t k = 0; k < pm.measured().size(); ++k) {
            const double born = inner(phi, pm.measured().projector(k) * phi).real();
            const double pointer = kernels::norm2(pointer_projected(pm, pm.index_map()[k], out));
            worst = std::max(worst, std::abs(born - pointer));
            ++samples;
        }
        // pointer positions that register no result must never fire
        for (std::size_t j = 0; j < used.size(); ++j) {
            if (!used[j]) {
                worst = std::max(worst, kernels::norm2(pointer_projected(pm, j, out)));
            }
        }
    }
    return make_report("probability-reproduction", worst, samples, tolerance);
}

ConditionReport check_dynamical(const Premeasurement &pm, std::size_t trials, std::uint64_t seed,
                                double tolerance) {
    require_trials(trials);
    Rng rng(seed);
    double worst = 0.0;
    std::size_t samples = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Vector phi = random_state(rng, pm.object_dim());
        const Vector out = pm.unitary() * object_ready(pm, phi);
        for (std::size_t k = 0; k < pm.measured().size(); ++k) {
            const Vector lhs = pointer_projected(pm, pm.index_map()[k], out);
            const Vector rhs =
                pm.unitary() * object_ready(pm, pm.measured().projector(k) * phi);
            worst = std::max(worst, norm(subtract(lhs, rhs)));
            ++samples;
        }
    }
    return make_report("dynamical", worst, samples, tolerance);
}

DensityOperator luders_state(const StateVector &object_state, const SpectralObservable &measured) {
    if (object_state.dim() != measured.dim()) {
        fail(ErrorCode::DimensionMismatch, "object state and observable dimensions differ");
    }
    if (!object_state.is_normalized()) {
        fail(ErrorCode::NotNormalized, "Lüders state needs a normalized input");
    }
    Matrix rho(measured.dim(), measured.dim());
    for (const auto &b : measured.branches()) {
        const Vector v = b.projector * object_state.span();
        rho += outer(v, v);
    }
    return {object_state.layout(), std::move(rho)};
}

BranchDecomposition branch_decomposition(const StateVector &final_state,
                                         const SpectralObservable &pointer,
                                         const Tolerances &tol) {
    const Label labels[] = {pointer.subsystem()};
    if (final_state.layout().dim(pointer.subsystem()) != pointer.dim()) {
        fail(ErrorCode::DimensionMismatch, "pointer observable does not fit its subsystem");
    }
    BranchDecomposition out{pointer.subsystem(), {}, 0.0};
    for (const auto &b : pointer.branches()) {
        Vector v = apply_local(b.projector, labels, final_state.layout(), final_state.span());
        const double w = kernels::norm2(v);
        if (w > tol.branch_drop) {
            out.branches.push_back(
                {b.index, w, StateVector(final_state.layout(), scaled(v, 1.0 / std::sqrt(w)))});
        } else {
            out.dropped_weight += w;
        }
    }
    return out;
}

Premeasurement phase_swap_corruption(const Premeasurement &pm) {
    if (pm.measured().size() < 2) {
        fail(ErrorCode::Validation, "phase-swap corruption needs two measured branches");
    }
    const Vector sharp = first_nonzero_column(pm.measured().projector(0));
    const Vector a = pm.unitary() * object_ready(pm, sharp);
    const Vector f = first_nonzero_column(pm.pointer().projector(pm.index_map()[1]));
    Vector b = kron(sharp, f);
    b = normalized(subtract(b, scaled(a, inner(a, b))));
    const cplx i{0.0, 1.0};
    Matrix r = Matrix::identity(a.size()) - outer(a, a) - outer(b, b);
    r += i * outer(b, a);
    r += i * outer(a, b);
    return pm.with_unitary(r * pm.unitary());
}

}  // namespace vnchain
