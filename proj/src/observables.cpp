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

#include "vnchain/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vnchain/error.hpp"

namespace vnchain {

DecompositionReport check_decomposition(const DecompositionOfIdentity &d, const Tolerances &tol) {
    DecompositionReport report;
    report.tolerance = tol.projector;
    if (d.projectors.empty()) {
        report.completeness = INFINITY;
        return report;
    }
    const std::size_t dim = d.projectors.front().rows();
    Matrix sum(dim, dim);
    for (std::size_t j = 0; j < d.projectors.size(); ++j) {
        const Matrix &p = d.projectors[j];
        if (!p.square() || p.rows() != dim) {
            report.idempotency = INFINITY;
            return report;
        }
        report.idempotency = std::max(report.idempotency, projector_residual(p));
        for (std::size_t k = 0; k < j; ++k) {
            report.orthogonality =
                std::max(report.orthogonality, max_abs_diff(p * d.projectors[k], Matrix(dim, dim)));
        }
        sum += p;
    }
    report.completeness = max_abs_diff(sum, Matrix::identity(dim));
    report.pass = report.idempotency <= tol.projector && report.orthogonality <= tol.projector &&
                  report.completeness <= tol.projector;
    return report;
}

SpectralObservable::SpectralObservable(Label subsystem, std::vector<double> eigenvalues,
                                       std::vector<Matrix> projectors, const Tolerances &tol)
    : subsystem_(std::move(subsystem)) {
    if (eigenvalues.size() != projectors.size() || projectors.empty()) {
        fail(ErrorCode::Validation, "observable needs one eigenvalue per projector");
    }
    dim_ = projectors.front().rows();
    std::vector<std::size_t> order(eigenvalues.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eigenvalues[a] < eigenvalues[b]; });
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t j = order[i];
        if (i > 0 && eigenvalues[j] - branches_.back().eigenvalue <= tol.eig_merge) {
            fail(ErrorCode::Validation, "eigenvalues must be pairwise distinct");
        }
        Matrix &p = projectors[j];
        if (!p.square() || p.rows() != dim_) {
            fail(ErrorCode::DimensionMismatch, "projector dimensions differ");
        }
        if (projector_residual(p) > tol.projector) {
            fail(ErrorCode::NotProjector, "branch operator is not an orthogonal projector");
        }
        const auto rank = static_cast<std::size_t>(std::lround(p.trace().real()));
        if (rank == 0) {
            fail(ErrorCode::InvalidDecomposition, "zero projector in spectral form");
        }
        branches_.push_back({i, eigenvalues[j], std::move(p), rank});
    }
    const DecompositionReport report = check_decomposition(decomposition(), tol);
    if (!report.pass) {
        fail(ErrorCode::InvalidDecomposition,
             "spectral projectors are not an orthogonal decomposition of the identity");
    }
}

SpectralObservable SpectralObservable::computational(Label subsystem, std::size_t dim) {
    std::vector<double> values;
    std::vector<Matrix> projectors;
    for (std::size_t k = 0; k < dim; ++k) {
        values.push_back(static_cast<double>(k));
        const Vector e = basis_vector(dim, k);
        projectors.push_back(outer(e, e));
    }
    return {std::move(subsystem), std::move(values), std::move(projectors)};
}

Matrix SpectralObservable::matrix() const {
    Matrix m(dim_, dim_);
    for (const auto &b : branches_) {
        m += b.projector * b.eigenvalue;
    }
    return m;
}

DecompositionOfIdentity SpectralObservable::decomposition() const {
    DecompositionOfIdentity d{subsystem_, {}};
    for (const auto &b : branches_) {
        d.projectors.push_back(b.projector);
    }
    return d;
}

SpectralObservable observable_from_matrix(const Label &subsystem, const Matrix &h,
                                          double merge_tol, const Tolerances &tol) {
    if (!h.square()) {
        fail(ErrorCode::DimensionMismatch, "observable matrix must be square");
    }
    if (hermiticity_residual(h) > tol.herm) {
        fail(ErrorCode::NotHermitian, "observable matrix is not Hermitian");
    }
    const HermitianEigen eig = eigh(h);
    const std::size_t n = eig.values.size();
    std::vector<double> values;
    std::vector<Matrix> projectors;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && eig.values[end] - eig.values[end - 1] <= merge_tol) {
            ++end;
        }
        Matrix p(n, n);
        double mean = 0.0;
        for (std::size_t j = start; j < end; ++j) {
            const Vector v = eig.vectors.column(j);
            p += outer(v, v);
            mean += eig.values[j];
        }
        values.push_back(mean / static_cast<double>(end - start));
        projectors.push_back(std::move(p));
        start = end;
    }
    Tolerances relaxed = tol;
    relaxed.eig_merge = std::min(tol.eig_merge, merge_tol);
    return {subsystem, std::move(values), std::move(projectors), relaxed};
}

Matrix event_complement(const Matrix &p, const Tolerances &tol) {
    if (projector_residual(p) > tol.projector) {
        fail(ErrorCode::NotProjector, "event must be an orthogonal projector");
    }
    return Matrix::identity(p.rows()) - p;
}

}  // namespace vnchain
