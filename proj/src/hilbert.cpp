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

#include "vnchain/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "vnchain/error.hpp"
#include "vnchain/kernels.hpp"

namespace vnchain {

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
    std::set<Label> seen;
    for (const auto &s : subsystems_) {
        if (s.label.empty()) {
            fail(ErrorCode::Validation, "subsystem labels must be non-empty");
        }
        if (s.dim < 1) {
            fail(ErrorCode::DimensionMismatch, "subsystem '" + s.label + "' has dimension 0");
        }
        if (!seen.insert(s.label).second) {
            fail(ErrorCode::LayoutConflict, "duplicate subsystem label '" + s.label + "'");
        }
    }
    strides_.assign(subsystems_.size(), 1);
    total_dim_ = 1;
    for (std::size_t i = subsystems_.size(); i-- > 0;) {
        strides_[i] = total_dim_;
        total_dim_ *= subsystems_[i].dim;
    }
}

bool SubsystemLayout::contains(const Label &label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.label == label; });
}

std::size_t SubsystemLayout::position(const Label &label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (subsystems_[i].label == label) {
            return i;
        }
    }
    fail(ErrorCode::UnknownLabel, "no subsystem '" + label + "' in layout " + describe());
}

std::vector<Label> SubsystemLayout::labels() const {
    std::vector<Label> out;
    out.reserve(subsystems_.size());
    for (const auto &s : subsystems_) {
        out.push_back(s.label);
    }
    return out;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout &other) const {
    std::vector<Subsystem> all = subsystems_;
    all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
    return SubsystemLayout(std::move(all));
}

SubsystemLayout SubsystemLayout::select(std::span<const Label> labels) const {
    std::vector<Subsystem> out;
    for (const auto &l : labels) {
        out.push_back(subsystems_[position(l)]);
    }
    return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::without(std::span<const Label> labels) const {
    for (const auto &l : labels) {
        (void)position(l);
    }
    std::vector<Subsystem> out;
    for (const auto &s : subsystems_) {
        if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) {
            out.push_back(s);
        }
    }
    return SubsystemLayout(std::move(out));
}

std::string SubsystemLayout::describe() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        os << (i ? ", " : "") << subsystems_[i].label << ":" << subsystems_[i].dim;
    }
    os << ")";
    return os.str();
}

namespace {

std::vector<std::size_t> offsets_for(const SubsystemLayout &layout,
                                     const std::vector<std::size_t> &positions) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t pos : positions) {
        const std::size_t d = layout.subsystems()[pos].dim;
        const std::size_t stride = layout.stride(pos);
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * d);
        for (std::size_t o : offsets) {
            for (std::size_t k = 0; k < d; ++k) {
                next.push_back(o + k * stride);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

void require_dim(std::size_t expected, std::size_t actual, const std::string &what) {
    if (expected != actual) {
        fail(ErrorCode::DimensionMismatch, what + ": expected dimension " +
                                               std::to_string(expected) + ", got " +
                                               std::to_string(actual));
    }
}

}  // namespace

IndexSplit split_indices(const SubsystemLayout &layout, std::span<const Label> selected) {
    std::vector<std::size_t> sel_pos;
    for (const auto &l : selected) {
        const std::size_t p = layout.position(l);
        if (std::find(sel_pos.begin(), sel_pos.end(), p) != sel_pos.end()) {
            fail(ErrorCode::LayoutConflict, "subsystem '" + l + "' selected twice");
        }
        sel_pos.push_back(p);
    }
    std::vector<std::size_t> rest_pos;
    for (std::size_t p = 0; p < layout.size(); ++p) {
        if (std::find(sel_pos.begin(), sel_pos.end(), p) == sel_pos.end()) {
            rest_pos.push_back(p);
        }
    }
    IndexSplit split;
    split.selected = layout.select(selected);
    split.rest = layout.without(selected);
    split.selected_offsets = offsets_for(layout, sel_pos);
    split.rest_offsets = offsets_for(layout, rest_pos);
    return split;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(SubsystemLayout layout, Vector amplitudes, const Tolerances &tol)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), normalized_(true) {
    require_dim(layout_.total_dim(), amplitudes_.size(), "state vector");
    const double n = vnchain::norm(amplitudes_);
    if (std::abs(n - 1.0) > tol.norm) {
        fail(ErrorCode::NotNormalized, "state vector has norm " + std::to_string(n));
    }
}

StateVector StateVector::unnormalized(SubsystemLayout layout, Vector amplitudes) {
    require_dim(layout.total_dim(), amplitudes.size(), "state vector");
    StateVector s;
    s.layout_ = std::move(layout);
    s.amplitudes_ = std::move(amplitudes);
    s.normalized_ = false;
    return s;
}

StateVector StateVector::basis(SubsystemLayout layout, std::size_t index) {
    const std::size_t d = layout.total_dim();
    return {std::move(layout), basis_vector(d, index)};
}

double StateVector::norm() const { return vnchain::norm(amplitudes_); }

StateVector StateVector::normalize() const { return {layout_, normalized(amplitudes_)}; }

DensityOperator::DensityOperator(SubsystemLayout layout, Matrix matrix, const Tolerances &tol)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    if (!matrix_.square()) {
        fail(ErrorCode::DimensionMismatch, "density operator must be square");
    }
    require_dim(layout_.total_dim(), matrix_.rows(), "density operator");
    const double herm = hermiticity_residual(matrix_);
    if (herm > tol.herm) {
        fail(ErrorCode::NotHermitian,
             "density operator hermiticity residual " + std::to_string(herm));
    }
    const cplx tr = matrix_.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > tol.norm) {
        fail(ErrorCode::NotNormalized, "density operator trace " + std::to_string(tr.real()));
    }
    const double min_eig = eigh(0.5 * (matrix_ + matrix_.adjoint())).values.front();
    if (min_eig < -tol.psd) {
        fail(ErrorCode::NotPositive, "density operator eigenvalue " + std::to_string(min_eig));
    }
}

DensityOperator DensityOperator::pure(const StateVector &state) {
    if (!state.is_normalized()) {
        fail(ErrorCode::NotNormalized, "pure density operator needs a normalized state");
    }
    return {state.layout(), outer(state.span(), state.span())};
}

DensityOperator DensityOperator::maximally_mixed(SubsystemLayout layout) {
    const std::size_t d = layout.total_dim();
    return {std::move(layout), Matrix::identity(d) * (1.0 / static_cast<double>(d))};
}

double DensityOperator::purity() const {
    // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
    return kernels::norm2(matrix_.data());
}

SubsystemBasis::SubsystemBasis(Label subsystem, std::size_t dim, std::vector<Vector> vectors,
                               const Tolerances &tol)
    : subsystem_(std::move(subsystem)), dim_(dim), vectors_(std::move(vectors)) {
    if (vectors_.size() > dim_) {
        fail(ErrorCode::NotOrthonormal, "more basis vectors than the subsystem dimension");
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        require_dim(dim_, vectors_[i].size(), "basis vector");
        for (std::size_t j = 0; j <= i; ++j) {
            const cplx g = inner(vectors_[j], vectors_[i]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > tol.orth) {
                fail(ErrorCode::NotOrthonormal, "basis vectors " + std::to_string(j) + " and " +
                                                    std::to_string(i) + " are not orthonormal");
            }
        }
    }
}

SubsystemBasis SubsystemBasis::computational(Label subsystem, std::size_t dim) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < dim; ++i) {
        vs.push_back(basis_vector(dim, i));
    }
    return {std::move(subsystem), dim, std::move(vs)};
}

SubsystemBasis SubsystemBasis::completed() const {
    if (is_complete()) {
        return *this;
    }
    std::vector<Vector> canonical;
    for (std::size_t i = 0; i < dim_; ++i) {
        canonical.push_back(basis_vector(dim_, i));
    }
    std::vector<Vector> vs = vectors_;
    extend_orthonormal(vs, canonical, dim_, 1e-6);
    return {subsystem_, dim_, std::move(vs)};
}

// ---------------------------------------------------------------------------

StateVector tensor(const StateVector &a, const StateVector &b) {
    SubsystemLayout layout = a.layout().concat(b.layout());
    Vector amps = kron(a.span(), b.span());
    if (a.is_normalized() && b.is_normalized()) {
        return {std::move(layout), std::move(amps)};
    }
    return StateVector::unnormalized(std::move(layout), std::move(amps));
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return {a.layout().concat(b.layout()), kron(a.matrix(), b.matrix())};
}

Matrix partial_trace(const SubsystemLayout &layout, const Matrix &op,
                     std::span<const Label> traced) {
    require_dim(layout.total_dim(), op.rows(), "partial trace operand");
    require_dim(layout.total_dim(), op.cols(), "partial trace operand");
    const IndexSplit split = split_indices(layout, traced);
    if (split.rest.empty()) {
        fail(ErrorCode::DegenerateLayout, "partial trace over every subsystem");
    }
    const auto &kept = split.rest_offsets;
    const auto &tr = split.selected_offsets;
    Matrix out(kept.size(), kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        for (std::size_t c = 0; c < kept.size(); ++c) {
            cplx s = 0.0;
            for (std::size_t t : tr) {
                s += op(kept[r] + t, kept[c] + t);
            }
            out(r, c) = s;
        }
    }
    return out;
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const Label> traced) {
    return {rho.layout().without(traced), partial_trace(rho.layout(), rho.matrix(), traced)};
}

DensityOperator partial_trace(const StateVector &state, std::span<const Label> traced) {
    if (!state.is_normalized()) {
        fail(ErrorCode::NotNormalized, "partial trace of an unnormalized vector");
    }
    const IndexSplit split = split_indices(state.layout(), traced);
    if (split.rest.empty()) {
        fail(ErrorCode::DegenerateLayout, "partial trace over every subsystem");
    }
    // Reshape into (kept x traced) and form M M^dagger.
    const std::size_t nk = split.rest_offsets.size();
    const std::size_t nt = split.selected_offsets.size();
    Matrix m(nk, nt);
    const auto &amps = state.amplitudes();
    for (std::size_t r = 0; r < nk; ++r) {
        for (std::size_t t = 0; t < nt; ++t) {
            m(r, t) = amps[split.rest_offsets[r] + split.selected_offsets[t]];
        }
    }
    Matrix out(nk, nk);
    const auto &k = kernels::active();
    for (std::size_t r = 0; r < nk; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            const cplx v = k.dotc(m.row(c).data(), m.row(r).data(), nt);
            out(r, c) = v;
            out(c, r) = std::conj(v);
        }
    }
    return {split.rest, std::move(out)};
}

StateVector partial_scalar_product(std::span<const cplx> ket, const Label &subsystem,
                                   const StateVector &state) {
    const Label labels[] = {subsystem};
    const IndexSplit split = split_indices(state.layout(), labels);
    require_dim(split.selected.total_dim(), ket.size(), "partial scalar product bra");
    if (split.rest.empty()) {
        fail(ErrorCode::DegenerateLayout, "partial scalar product leaves no subsystem");
    }
    const auto &amps = state.amplitudes();
    Vector gathered(ket.size());
    Vector out(split.rest_offsets.size());
    for (std::size_t r = 0; r < out.size(); ++r) {
        for (std::size_t s = 0; s < ket.size(); ++s) {
            gathered[s] = amps[split.rest_offsets[r] + split.selected_offsets[s]];
        }
        out[r] = kernels::dotc(ket, gathered);
    }
    return StateVector::unnormalized(split.rest, std::move(out));
}

std::vector<ExpansionTerm> expand_in_basis(const StateVector &state, const SubsystemBasis &basis) {
    require_dim(state.layout().dim(basis.subsystem()), basis.dim(), "expansion basis");
    const SubsystemBasis full = basis.completed();
    std::vector<ExpansionTerm> terms;
    terms.reserve(full.size());
    for (std::size_t n = 0; n < full.size(); ++n) {
        terms.push_back({n, partial_scalar_product(full.vectors()[n], basis.subsystem(), state)});
    }
    return terms;
}

StateVector resum_expansion(std::span<const ExpansionTerm> terms, const SubsystemBasis &basis,
                            const SubsystemLayout &target) {
    const SubsystemBasis full = basis.completed();
    const SubsystemLayout factor{{basis.subsystem(), basis.dim()}};
    const std::vector<Label> order = target.labels();
    Vector sum(target.total_dim());
    for (const auto &term : terms) {
        const StateVector ket = StateVector::unnormalized(factor, full.vectors().at(term.index));
        const StateVector product = permute(tensor(term.coefficient, ket), order);
        kernels::axpy(1.0, product.span(), sum);
    }
    return StateVector::unnormalized(target, std::move(sum));
}

Matrix embed_operator(const Matrix &op, const Label &subsystem, const SubsystemLayout &layout) {
    const std::size_t pos = layout.position(subsystem);
    const std::size_t d = layout.subsystems()[pos].dim;
    if (op.rows() != d || op.cols() != d) {
        fail(ErrorCode::DimensionMismatch,
             "operator on '" + subsystem + "' must be " + std::to_string(d) + "x" +
                 std::to_string(d));
    }
    std::size_t left = 1;
    for (std::size_t i = 0; i < pos; ++i) {
        left *= layout.subsystems()[i].dim;
    }
    const std::size_t right = layout.stride(pos);
    return kron(Matrix::identity(left), kron(op, Matrix::identity(right)));
}

Vector apply_local(const Matrix &op, std::span<const Label> subsystems,
                   const SubsystemLayout &layout, std::span<const cplx> vector) {
    require_dim(layout.total_dim(), vector.size(), "apply_local operand");
    const IndexSplit split = split_indices(layout, subsystems);
    const std::size_t ns = split.selected_offsets.size();
    if (op.rows() != ns || op.cols() != ns) {
        fail(ErrorCode::DimensionMismatch, "local operator does not match " +
                                               split.selected.describe());
    }
    Vector out(vector.size());
    Vector gathered(ns);
    for (std::size_t r : split.rest_offsets) {
        for (std::size_t s = 0; s < ns; ++s) {
            gathered[s] = vector[r + split.selected_offsets[s]];
        }
        const Vector image = op * gathered;
        for (std::size_t s = 0; s < ns; ++s) {
            out[r + split.selected_offsets[s]] = image[s];
        }
    }
    return out;
}

namespace {

std::vector<std::size_t> permutation_offsets(const SubsystemLayout &layout,
                                             std::span<const Label> order) {
    if (order.size() != layout.size()) {
        fail(ErrorCode::LayoutConflict, "permutation must list every subsystem exactly once");
    }
    return split_indices(layout, order).selected_offsets;
}

}  // namespace

StateVector permute(const StateVector &state, std::span<const Label> order) {
    const auto offsets = permutation_offsets(state.layout(), order);
    Vector amps(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        amps[i] = state.amplitudes()[offsets[i]];
    }
    SubsystemLayout layout = state.layout().select(order);
    if (state.is_normalized()) {
        return {std::move(layout), std::move(amps)};
    }
    return StateVector::unnormalized(std::move(layout), std::move(amps));
}

Matrix permute(const SubsystemLayout &layout, const Matrix &op, std::span<const Label> order) {
    const auto offsets = permutation_offsets(layout, order);
    Matrix out(offsets.size(), offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            out(i, j) = op(offsets[i], offsets[j]);
        }
    }
    return out;
}

DensityOperator permute(const DensityOperator &rho, std::span<const Label> order) {
    return {rho.layout().select(order), permute(rho.layout(), rho.matrix(), order)};
}

}  // namespace vnchain
