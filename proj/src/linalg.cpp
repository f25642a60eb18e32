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

#include "vnchain/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "vnchain/error.hpp"
#include "vnchain/kernels.hpp"

namespace vnchain {

namespace {

void require_same_shape(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": shape mismatch");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        fail(ErrorCode::DimensionMismatch, "matrix data size does not match shape");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            fail(ErrorCode::DimensionMismatch, "from_columns: ragged columns");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = columns[c][r];
        }
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

Matrix &Matrix::operator+=(const Matrix &other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix &Matrix::operator*=(cplx s) {
    for (auto &x : data_) {
        x *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
Matrix operator*(Matrix a, cplx s) { return a *= s; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        fail(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    }
    Matrix c(a.rows(), b.cols());
    const auto &k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx *out = c.row(i).data();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx s = a(i, j);
            if (s != cplx{0.0, 0.0}) {
                k.axpy(s, b.row(j).data(), out, b.cols());
            }
        }
    }
    return c;
}

Vector operator*(const Matrix &a, std::span<const cplx> v) {
    if (a.cols() != v.size()) {
        fail(ErrorCode::DimensionMismatch, "matrix-vector product: dimension mismatch");
    }
    Vector out(a.rows());
    const auto &k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out[i] = k.dotu(a.row(i).data(), v.data(), v.size());
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx s = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    m(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
                }
            }
        }
    }
    return m;
}

Vector kron(std::span<const cplx> a, std::span<const cplx> b) {
    Vector v(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            v[i * b.size() + j] = a[i] * b[j];
        }
    }
    return v;
}

Matrix outer(std::span<const cplx> a, std::span<const cplx> b) {
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::DimensionMismatch, "inner product: dimension mismatch");
    }
    return kernels::dotc(a, b);
}

double norm(std::span<const cplx> v) { return std::sqrt(kernels::norm2(v)); }

Vector normalized(std::span<const cplx> v) {
    const double n = norm(v);
    if (n == 0.0) {
        fail(ErrorCode::NotNormalized, "cannot normalize the zero vector");
    }
    return scaled(v, 1.0 / n);
}

Vector scaled(std::span<const cplx> v, cplx s) {
    Vector out(v.begin(), v.end());
    for (auto &x : out) {
        x *= s;
    }
    return out;
}

Vector add(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::DimensionMismatch, "vector addition: dimension mismatch");
    }
    Vector out(a.begin(), a.end());
    kernels::axpy(1.0, b, out);
    return out;
}

Vector subtract(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::DimensionMismatch, "vector subtraction: dimension mismatch");
    }
    Vector out(a.begin(), a.end());
    kernels::axpy(-1.0, b, out);
    return out;
}

Vector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        fail(ErrorCode::DimensionMismatch, "basis index out of range");
    }
    Vector v(dim);
    v[index] = 1.0;
    return v;
}

double frobenius_norm(const Matrix &m) { return std::sqrt(kernels::norm2(m.data())); }

double max_abs_diff(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::DimensionMismatch, "max_abs_diff: size mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double hermiticity_residual(const Matrix &m) {
    if (!m.square()) {
        fail(ErrorCode::DimensionMismatch, "hermiticity check needs a square matrix");
    }
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return r;
}

double unitarity_residual(const Matrix &m) {
    if (!m.square()) {
        return INFINITY;
    }
    return max_abs_diff(m.adjoint() * m, Matrix::identity(m.rows()));
}

double projector_residual(const Matrix &m) {
    if (!m.square()) {
        return INFINITY;
    }
    return std::max(max_abs_diff(m * m, m), hermiticity_residual(m));
}

HermitianEigen eigh(const Matrix &h) {
    if (!h.square()) {
        fail(ErrorCode::DimensionMismatch, "eigh needs a square matrix");
    }
    const auto n = static_cast<Eigen::Index>(h.rows());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = h(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::NotHermitian, "Hermitian eigensolver did not converge");
    }
    HermitianEigen out;
    out.values.resize(h.rows());
    out.vectors = Matrix(h.rows(), h.rows());
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[static_cast<std::size_t>(j)] = solver.eigenvalues()(j);
        for (Eigen::Index i = 0; i < n; ++i) {
            out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                solver.eigenvectors()(i, j);
        }
    }
    return out;
}

double trace_distance(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b, "trace_distance");
    Matrix diff = a - b;
    // symmetrize to absorb rounding asymmetry before the Hermitian solver
    diff = 0.5 * (diff + diff.adjoint());
    double s = 0.0;
    for (double v : eigh(diff).values) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

double projector_distance(std::span<const cplx> a, std::span<const cplx> b) {
    const Vector na = normalized(a);
    const Vector nb = normalized(b);
    return frobenius_norm(outer(na, na) - outer(nb, nb));
}

void extend_orthonormal(std::vector<Vector> &basis, std::span<const Vector> candidates,
                        std::size_t limit, double threshold) {
    for (const auto &candidate : candidates) {
        if (basis.size() >= limit) {
            return;
        }
        Vector v = candidate;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                kernels::axpy(-kernels::dotc(b, v), b, v);
            }
        }
        const double n = norm(v);
        if (n > threshold) {
            basis.push_back(scaled(v, 1.0 / n));
        }
    }
}

}  // namespace vnchain
