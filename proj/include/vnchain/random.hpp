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

// Seedable random source with a platform-independent output stream.
//
// std::*_distribution output is implementation-defined, so uniform and normal
// variates are derived here directly from the 64-bit Mersenne Twister words:
// uniform() takes the top 53 bits, normal() uses Box-Muller on two uniforms.

#include <cstdint>
#include <random>

#include "vnchain/linalg.hpp"

namespace vnchain {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();
    cplx complex_normal();
    std::uint64_t next_u64() { return engine_(); }
    std::size_t index(std::size_t n);

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent per-shard / per-case seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Vector random_vector(Rng &rng, std::size_t dim);
Vector random_state(Rng &rng, std::size_t dim);
/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(Rng &rng, std::size_t dim);
Matrix random_hermitian(Rng &rng, std::size_t dim);
/// Random full-rank density matrix W W^dagger / tr.
Matrix random_density(Rng &rng, std::size_t dim);
/// Orthogonal projector onto a random rank-`rank` subspace.
Matrix random_projector(Rng &rng, std::size_t dim, std::size_t rank);
/// Random decomposition of the identity into `blocks` nonzero projectors.
std::vector<Matrix> random_decomposition(Rng &rng, std::size_t dim, std::size_t blocks);

}  // namespace vnchain
