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

// Dense complex vectors and row-major matrices. Products route through the
// dispatched kernels in kernels.hpp.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vnchain {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static Matrix diagonal(std::span<const double> values);
    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(std::span<const Vector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;

    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    cplx trace() const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(cplx s);

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(Matrix a, cplx s);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &a, std::span<const cplx> v);

Matrix kron(const Matrix &a, const Matrix &b);
Vector kron(std::span<const cplx> a, std::span<const cplx> b);
/// |a><b|
Matrix outer(std::span<const cplx> a, std::span<const cplx> b);

cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);
Vector normalized(std::span<const cplx> v);
Vector scaled(std::span<const cplx> v, cplx s);
Vector add(std::span<const cplx> a, std::span<const cplx> b);
Vector subtract(std::span<const cplx> a, std::span<const cplx> b);
Vector basis_vector(std::size_t dim, std::size_t index);

double frobenius_norm(const Matrix &m);
/// Largest absolute entry of a - b; dimensions must agree.
double max_abs_diff(const Matrix &a, const Matrix &b);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

double hermiticity_residual(const Matrix &m);
double unitarity_residual(const Matrix &m);
/// Maximum of idempotency and hermiticity residuals.
double projector_residual(const Matrix &m);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j belongs to values[j]
};

/// Eigendecomposition of a Hermitian matrix. Only the lower triangle is read.
HermitianEigen eigh(const Matrix &h);

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
double trace_distance(const Matrix &a, const Matrix &b);
/// Projector distance between two pure states, insensitive to global phase.
double projector_distance(std::span<const cplx> a, std::span<const cplx> b);

/// Modified Gram-Schmidt of `candidates` against `basis`; appends every candidate
/// whose orthogonal remainder has norm above `threshold`, until `limit` vectors
/// are present. Each candidate is orthogonalized twice.
void extend_orthonormal(std::vector<Vector> &basis, std::span<const Vector> candidates,
                        std::size_t limit, double threshold = 1e-8);

}  // namespace vnchain
