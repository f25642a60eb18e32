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

#include "vnchain/random.hpp"

#include <cmath>
#include <numbers>

#include "vnchain/error.hpp"

namespace vnchain {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::size_t Rng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Vector random_vector(Rng &rng, std::size_t dim) {
    Vector v(dim);
    for (auto &x : v) {
        x = rng.complex_normal();
    }
    return v;
}

Vector random_state(Rng &rng, std::size_t dim) { return normalized(random_vector(rng, dim)); }

Matrix random_unitary(Rng &rng, std::size_t dim) {
    // Gram-Schmidt on Ginibre columns is QR with a positive-diagonal R, which
    // is exactly the phase convention that makes Q Haar distributed.
    std::vector<Vector> cols;
    while (cols.size() < dim) {
        const Vector candidate = random_vector(rng, dim);
        extend_orthonormal(cols, std::span<const Vector>(&candidate, 1), dim);
    }
    return Matrix::from_columns(cols);
}

Matrix random_hermitian(Rng &rng, std::size_t dim) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return 0.5 * (m + m.adjoint());
}

Matrix random_density(Rng &rng, std::size_t dim) {
    Matrix w(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            w(i, j) = rng.complex_normal();
        }
    }
    Matrix rho = w * w.adjoint();
    rho *= 1.0 / rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

Matrix random_projector(Rng &rng, std::size_t dim, std::size_t rank) {
    if (rank > dim) {
        fail(ErrorCode::DimensionMismatch, "projector rank exceeds dimension");
    }
    const Matrix u = random_unitary(rng, dim);
    Matrix p(dim, dim);
    for (std::size_t c = 0; c < rank; ++c) {
        const Vector v = u.column(c);
        p += outer(v, v);
    }
    return p;
}

std::vector<Matrix> random_decomposition(Rng &rng, std::size_t dim, std::size_t blocks) {
    if (blocks == 0 || blocks > dim) {
        fail(ErrorCode::InvalidDecomposition, "block count must lie in [1, dim]");
    }
    // Block sizes: one each, remaining dimensions spread at random.
    std::vector<std::size_t> sizes(blocks, 1);
    for (std::size_t extra = dim - blocks; extra > 0; --extra) {
        ++sizes[rng.index(blocks)];
    }
    const Matrix u = random_unitary(rng, dim);
    std::vector<Matrix> out;
    std::size_t col = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        Matrix p(dim, dim);
        for (std::size_t j = 0; j < sizes[b]; ++j, ++col) {
            const Vector v = u.column(col);
            p += outer(v, v);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace vnchain
