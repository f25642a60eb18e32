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

#include "vnchain/premeasurement.hpp"
#include "vnchain/scenario.hpp"

namespace vnchain {

enum class ReportFormat { Text, Tsv, Json };

/// Throws Validation for anything but text, tsv or json.
ReportFormat parse_report_format(const std::string &name);

struct RunOptions {
    std::uint64_t seed = 0;
    bool dump_states = false;
    /// Tolerance for condition reports and weight-table sums.
    double check_tolerance = 1e-9;
    Tolerances tol = default_tolerances();
};

struct BranchRow {
    std::size_t index;
    double weight;
    std::string summary;
};

struct BranchTable {
    std::string title;
    std::vector<BranchRow> rows;
    double dropped_weight = 0.0;

    double total() const;
};

struct StageRecord {
    std::size_t stage;
    Label object;
    Label instrument;
    std::string kind;
    StateVector state;  // after the stage
};

struct StageCondition {
    std::size_t stage;
    ConditionReport report;
};

struct Metric {
    std::string name;
    double value;
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    SubsystemLayout layout;
    std::vector<StageRecord> stages;
    std::vector<BranchTable> tables;
    std::vector<StageCondition> conditions;
    std::vector<Metric> metrics;
    double max_weight_sum_residual = 0.0;
    double max_condition_residual = 0.0;
    double check_tolerance = 0.0;
    bool pass = true;
};

/// Library errors come back annotated with the stage or analysis they came from.
RunReport run_scenario(const Scenario &scenario, const RunOptions &options = {});

std::string render_report(const RunReport &report, ReportFormat format, bool dump_states);

}  // namespace vnchain
