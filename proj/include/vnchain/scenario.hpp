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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vnchain/hilbert.hpp"
#include "vnchain/observables.hpp"
#include "vnchain/premeasurement.hpp"

namespace vnchain {

/// A named matrix ("pauli_x", "identity", ...) or explicit entries.
struct MatrixSpec {
    std::string name;
    Matrix value;

    friend bool operator==(const MatrixSpec &, const MatrixSpec &) = default;
};

/// A preset ("plus", "minus", "basis:k", "bell") or an amplitude list.
struct StateSpec {
    std::string preset;
    Vector amplitudes;

    friend bool operator==(const StateSpec &, const StateSpec &) = default;
};

struct ObservableSpec {
    std::string kind = "basis";  // basis | matrix | projectors
    MatrixSpec matrix;
    std::vector<double> eigenvalues;
    std::vector<MatrixSpec> projectors;

    friend bool operator==(const ObservableSpec &, const ObservableSpec &) = default;
};

struct DressingSpec {
    MatrixSpec object;
    MatrixSpec instrument;

    friend bool operator==(const DressingSpec &, const DressingSpec &) = default;
};

struct StageSpec {
    Label object;
    Label instrument;
    ObservableSpec measured;
    std::optional<ObservableSpec> pointer;
    std::vector<StateSpec> pointer_states;  // empty: computational |0>, |1>, ...
    std::optional<StateSpec> ready;         // default basis:0
    std::string kind = "ideal";             // ideal | exact
    std::vector<DressingSpec> dressings;
    std::optional<std::uint64_t> dressing_seed;

    friend bool operator==(const StageSpec &, const StageSpec &) = default;
};

/// One prepared factor of the initial state; `labels` has one entry except for "bell".
struct InitialSpec {
    std::vector<Label> labels;
    StateSpec state;

    friend bool operator==(const InitialSpec &, const InitialSpec &) = default;
};

struct EnsembleMemberSpec {
    double weight = 0.0;
    StateSpec state;  // replaces the first stage's object state

    friend bool operator==(const EnsembleMemberSpec &, const EnsembleMemberSpec &) = default;
};

struct AnalysisSpec {
    std::string type;  // branches | improper_mixture | world_branches | ensemble_update
                       // | condition_reports
    std::optional<Label> subsystem;
    std::optional<Label> blocks;
    std::optional<Label> pointer;
    std::optional<std::size_t> trials;
    std::vector<EnsembleMemberSpec> members;
    std::optional<std::size_t> event_stage;
    std::optional<std::size_t> event_branch;
    std::optional<MatrixSpec> event_projector;
    std::uint64_t monte_carlo_samples = 0;

    friend bool operator==(const AnalysisSpec &, const AnalysisSpec &) = default;
};

struct Scenario {
    std::string name;
    std::string description;
    SubsystemLayout layout;
    std::vector<InitialSpec> initial;
    std::vector<StageSpec> stages;
    std::vector<AnalysisSpec> analyses;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Parses and fully validates a scenario document. Diagnostics name the offending
/// field, or the line and column for syntax errors.
Scenario parse_scenario(std::string_view text, const Tolerances &tol = default_tolerances());
/// Re-runs the semantic checks of parse_scenario.
void validate_scenario(const Scenario &scenario, const Tolerances &tol = default_tolerances());
std::string emit_scenario(const Scenario &scenario);

/// Parses "plus", "basis:1", "[0.6, 0.8]", "[[1,0],[0,1]]", ...
StateSpec parse_state_spec(std::string_view text);
/// Replaces the preparation of `labels` (comma separated), then revalidates.
void override_initial(Scenario &scenario, const std::string &labels, const StateSpec &state,
                      const Tolerances &tol = default_tolerances());

std::vector<std::string> builtin_names();
bool is_builtin(const std::string &name);
const std::string &builtin_document(const std::string &name);

Matrix materialize_matrix(const MatrixSpec &spec, std::size_t dim, const std::string &where);
StateVector materialize_state(const StateSpec &spec, const SubsystemLayout &layout,
                              const std::string &where,
                              const Tolerances &tol = default_tolerances());
SpectralObservable materialize_observable(const ObservableSpec &spec, const Label &subsystem,
                                          std::size_t dim, const std::string &where,
                                          const Tolerances &tol = default_tolerances());
Premeasurement build_stage(const Scenario &scenario, std::size_t stage,
                           const Tolerances &tol = default_tolerances());
/// Pointer observable of the stage whose instrument is `label`, else the
/// computational observable on `label`.
SpectralObservable pointer_on(const Scenario &scenario, const Label &label,
                              const Tolerances &tol = default_tolerances());

}  // namespace vnchain
