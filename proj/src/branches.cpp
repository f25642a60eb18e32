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

#include "vnchain/branches.hpp"

namespace vnchain {

double BranchDecomposition::kept_weight() const {
    double s = 0.0;
    for (const auto &b : branches) {
        s += b.weight;
    }
    return s;
}

DensityOperator component_density(const Component &component) {
    if (const auto *pure = std::get_if<StateVector>(&component)) {
        return DensityOperator::pure(*pure);
    }
    return std::get<DensityOperator>(component);
}

}  // namespace vnchain
