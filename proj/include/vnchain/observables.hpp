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

#include <cstddef>
#include <vector>

#include "vnchain/hilbert.hpp"

namespace vnchain {

/// Orthogonal projectors on one subsystem meant to sum to the identity. Plain
/// data; consumers validate with check_decomposition().
struct DecompositionOfIdentity {
    Label subsystem;
    std::vector<Matrix> projectors;
};

struct DecompositionReport {
    double idempotency = 0.0;    // max_k ||P_k^2 - P_k||, also covers P_k^dagger = P_k
    double orthogonality = 0.0;  // max_{j != k} ||P_j P_k||
    double completeness = 0.0;   // ||sum_k P_k - I||
    double tolerance = 0.0;
    bool pass = false;
};

DecompositionReport check_decomposition(const DecompositionOfIdentity &d,
                                        const Tolerances &tol = default_tolerances());

struct SpectralBranch {
    std::size_t index;
    double eigenvalue;
    Matrix projector;
    std::size_t rank;
};

/// An observable in unique spectral form sum_k o_k E^k: distinct eigenvalues,
/// nonzero orthogonal projectors summing to the identity, branches indexed by
/// ascending eigenvalue.
class SpectralObservable {
  public:
    SpectralObservable() = default;
    /// Branches are sorted by eigenvalue. Throws NotProjector,
    /// InvalidDecomposition or Validation (repeated eigenvalue).
    SpectralObservable(Label subsystem, std::vector<double> eigenvalues,
                       std::vector<Matrix> projectors,
                       const Tolerances &tol = default_tolerances());
    /// Eigenvalue k on |k><k|.
    static SpectralObservable computational(Label subsystem, std::size_t dim);

    const Label &subsystem() const { return subsystem_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return branches_.size(); }
    const std::vector<SpectralBranch> &branches() const { return branches_; }
    const Matrix &projector(std::size_t k) const { return branches_.at(k).projector; }
    double eigenvalue(std::size_t k) const { return branches_.at(k).eigenvalue; }

    /// sum_k o_k E^k
    Matrix matrix() const;
    DecompositionOfIdentity decomposition() const;

  private:
    Label subsystem_;
    std::size_t dim_ = 0;
    std::vector<SpectralBranch> branches_;
};

/// Diagonalizes `h` and merges eigenvalues closer than `merge_tol` (chained on
/// sorted neighbours) into one branch; the branch eigenvalue is the mean.
SpectralObservable observable_from_matrix(const Label &subsystem, const Matrix &h,
                                          double merge_tol = default_tolerances().eig_merge,
                                          const Tolerances &tol = default_tolerances());

/// I - p. Throws NotProjector.
Matrix event_complement(const Matrix &p, const Tolerances &tol = default_tolerances());

}  // namespace vnchain
