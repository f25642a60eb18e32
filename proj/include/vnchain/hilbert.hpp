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

// Multipartite state spaces.
//
// Index convention: the product basis of a SubsystemLayout enumerates
// multi-indices with the leftmost subsystem varying slowest, i.e. for layout
// (A:dA, B:dB) the basis vector |a>|b> sits at index a*dB + b. Every routine in
// this header reads and writes amplitudes and matrix entries in that order.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vnchain/linalg.hpp"
#include "vnchain/tolerances.hpp"

namespace vnchain {

using Label = std::string;

struct Subsystem {
    Label label;
    std::size_t dim = 1;

    friend bool operator==(const Subsystem &, const Subsystem &) = default;
};

class SubsystemLayout {
  public:
    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<Subsystem> subsystems);
    SubsystemLayout(std::initializer_list<Subsystem> subsystems)
        : SubsystemLayout(std::vector<Subsystem>(subsystems)) {}

    const std::vector<Subsystem> &subsystems() const { return subsystems_; }
    std::size_t size() const { return subsystems_.size(); }
    bool empty() const { return subsystems_.empty(); }
    std::size_t total_dim() const { return total_dim_; }

    bool contains(const Label &label) const;
    /// Position of `label`; throws UnknownLabel.
    std::size_t position(const Label &label) const;
    std::size_t dim(const Label &label) const { return subsystems_[position(label)].dim; }
    /// Distance in the flat index between consecutive values of subsystem `pos`.
    std::size_t stride(std::size_t pos) const { return strides_[pos]; }
    std::vector<Label> labels() const;

    /// Concatenation; throws LayoutConflict on a shared label.
    SubsystemLayout concat(const SubsystemLayout &other) const;
    /// Subsystems in `labels`, in the order given.
    SubsystemLayout select(std::span<const Label> labels) const;
    /// All subsystems except `labels`, in layout order.
    SubsystemLayout without(std::span<const Label> labels) const;

    std::string describe() const;

    friend bool operator==(const SubsystemLayout &a, const SubsystemLayout &b) {
        return a.subsystems_ == b.subsystems_;
    }

  private:
    std::vector<Subsystem> subsystems_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

/// Splits flat product indices into a "selected" part (the given labels, in the
/// given order) and a "rest" part (remaining subsystems in layout order), so
/// that every flat index equals selected_offsets[s] + rest_offsets[r] for a
/// unique pair (s, r). Both offset tables enumerate their multi-indices
/// leftmost-slowest.
struct IndexSplit {
    SubsystemLayout selected;
    SubsystemLayout rest;
    std::vector<std::size_t> selected_offsets;
    std::vector<std::size_t> rest_offsets;
};

IndexSplit split_indices(const SubsystemLayout &layout, std::span<const Label> selected);

class StateVector {
  public:
    StateVector() = default;
    /// A normalized state; throws NotNormalized if | ||amps|| - 1 | > tol.norm.
    StateVector(SubsystemLayout layout, Vector amplitudes,
                const Tolerances &tol = default_tolerances());
    /// An unnormalized vector such as an expansion coefficient.
    static StateVector unnormalized(SubsystemLayout layout, Vector amplitudes);
    static StateVector basis(SubsystemLayout layout, std::size_t index);

    const SubsystemLayout &layout() const { return layout_; }
    const Vector &amplitudes() const { return amplitudes_; }
    std::span<const cplx> span() const { return amplitudes_; }
    std::size_t dim() const { return amplitudes_.size(); }
    bool is_normalized() const { return normalized_; }
    double norm() const;
    /// Rescaled to unit norm; throws NotNormalized for the zero vector.
    StateVector normalize() const;

  private:
    SubsystemLayout layout_;
    Vector amplitudes_;
    bool normalized_ = false;
};

class DensityOperator {
  public:
    DensityOperator() = default;
    /// Validates hermiticity, unit trace and positivity against `tol`.
    DensityOperator(SubsystemLayout layout, Matrix matrix,
                    const Tolerances &tol = default_tolerances());
    static DensityOperator pure(const StateVector &state);
    static DensityOperator maximally_mixed(SubsystemLayout layout);

    const SubsystemLayout &layout() const { return layout_; }
    const Matrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    double purity() const;

  private:
    SubsystemLayout layout_;
    Matrix matrix_;
};

class SubsystemBasis {
  public:
    SubsystemBasis() = default;
    /// Throws NotOrthonormal / DimensionMismatch.
    SubsystemBasis(Label subsystem, std::size_t dim, std::vector<Vector> vectors,
                   const Tolerances &tol = default_tolerances());
    static SubsystemBasis computational(Label subsystem, std::size_t dim);

    const Label &subsystem() const { return subsystem_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Vector> &vectors() const { return vectors_; }
    std::size_t size() const { return vectors_.size(); }
    bool is_complete() const { return vectors_.size() == dim_; }
    /// Existing vectors first, then Gram-Schmidt over e_0, e_1, ... until complete.
    SubsystemBasis completed() const;

  private:
    Label subsystem_;
    std::size_t dim_ = 0;
    std::vector<Vector> vectors_;
};

StateVector tensor(const StateVector &a, const StateVector &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);

/// Partial trace of an arbitrary operator on `layout` over `traced`; the result
/// lives on layout.without(traced). Throws DegenerateLayout if nothing remains.
Matrix partial_trace(const SubsystemLayout &layout, const Matrix &op,
                     std::span<const Label> traced);
DensityOperator partial_trace(const DensityOperator &rho, std::span<const Label> traced);
/// Requires a normalized state.
DensityOperator partial_trace(const StateVector &state, std::span<const Label> traced);

/// <bra|_S |state>: contracts subsystem S with the bra of `ket` (a vector on S).
/// The result is flagged unnormalized.
StateVector partial_scalar_product(std::span<const cplx> ket, const Label &subsystem,
                                   const StateVector &state);

struct ExpansionTerm {
    std::size_t index;        // position in the completed basis
    StateVector coefficient;  // on the opposite subsystems, unnormalized
};

/// state = sum_n coefficient_n (x) |n>_S over the completed basis.
std::vector<ExpansionTerm> expand_in_basis(const StateVector &state, const SubsystemBasis &basis);
/// Inverse of expand_in_basis, returned in `target` subsystem order.
StateVector resum_expansion(std::span<const ExpansionTerm> terms, const SubsystemBasis &basis,
                            const SubsystemLayout &target);

/// I (x) ... (x) op (x) ... (x) I with op at the position of `subsystem`.
Matrix embed_operator(const Matrix &op, const Label &subsystem, const SubsystemLayout &layout);
/// Applies `op`, acting on `subsystems` in the given order, to a layout vector.
Vector apply_local(const Matrix &op, std::span<const Label> subsystems,
                   const SubsystemLayout &layout, std::span<const cplx> vector);

/// Reorders subsystems; `order` must be a permutation of the layout labels.
StateVector permute(const StateVector &state, std::span<const Label> order);
DensityOperator permute(const DensityOperator &rho, std::span<const Label> order);
Matrix permute(const SubsystemLayout &layout, const Matrix &op, std::span<const Label> order);

}  // namespace vnchain
