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

#include <cstdint>
#include <string>
#include <vector>

#include "vnchain/runner.hpp"

namespace vnchain {

enum class Corruption { None, Phase };

/// Throws Validation for an unknown mode.
Corruption parse_corruption(const std::string &name);

struct VerifyOptions {
    std::vector<std::size_t> object_dims{2, 3, 4};
    std::vector<std::size_t> instrument_dims{2, 3, 4, 5, 6};
    std::size_t trials = 100;  // per suite and grid cell
    std::uint64_t seed = 0;
    Corruption corrupt = Corruption::None;
    std::size_t jobs = 1;
};

/// Object dims 2..max_object, instrument dims 2..max_instrument.
VerifyOptions grid_up_to(std::size_t max_object, std::size_t max_instrument);

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string first_failure;
    bool pass() const { return failures == 0; }
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    std::vector<std::string> warnings;
    bool pass = true;
};

std::vector<std::string> suite_names();

VerifyReport verify(const VerifyOptions &options);

std::string render_verify(const VerifyReport &report, ReportFormat format);

}  // namespace vnchain
