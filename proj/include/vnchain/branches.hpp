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
#include <variant>
#include <vector>

#include "vnchain/hilbert.hpp"

namespace vnchain {

using Component = std::variant<StateVector, DensityOperator>;

struct Branch {
    std::size_t index;  // pointer / decomposition index k
    double weight;
    Component component;
};

/// Weighted components of a state split along a pointer (or any decomposition
/// of the identity). Branches at or below the drop threshold are not listed;
/// their total weight is kept in dropped_weight.
struct BranchDecomposition {
    Label pointer_subsystem;
    std::vector<Branch> branches;
    double dropped_weight = 0.0;

    double kept_weight() const;
    /// kept + dropped; 1 up to rounding for a normalized input.
    double total_weight() const { return kept_weight() + dropped_weight; }
};

/// Density operator of a branch component (|c><c| for pure components).
DensityOperator component_density(const Component &component);

}  // namespace vnchain
