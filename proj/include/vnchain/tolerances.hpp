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

namespace vnchain {

/// Numerical thresholds shared by every module. Defaults give double-precision
/// headroom for composite dimensions up to a few hundred.
struct Tolerances {
    double norm = 1e-10;
    double herm = 1e-10;
    double orth = 1e-10;
    double psd = 1e-9;
    double eig_merge = 1e-8;
    double unitary = 1e-10;
    double projector = 1e-10;
    // Branches whose Born weight does not exceed this are dropped.
    double branch_drop = 1e-12;
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace vnchain
