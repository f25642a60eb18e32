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

// Von Neumann chains and the states relative to (conditional on) an event on a
// subject subsystem.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vnchain/branches.hpp"
#include "vnchain/hilbert.hpp"
#include "vnchain/observables.hpp"
#include "vnchain/premeasurement.hpp"

namespace vnchain {

/// Applies pm's coupling to its (object, instrument) pair inside a larger state.
/// The instrument is expected to be in pm's ready state already.
StateVector apply_coupling(const Premeasurement &pm, const StateVector &state);

struct ChainResult {
    StateVector intermediate;  // first link, on (A, B)
    StateVector final_state;   // second link, on (A, B, C)
};

/// Object A measured by B, then B's pointer read by C. `second` must measure
/// `first`'s pointer observable: its object is first's instrument and its
/// measured projectors are first's pointer projectors. Throws ObservableMismatch.
ChainResult run_two_link_chain(const Premeasurement &first, const Premeasurement &second,
                               const StateVector &object_state,
                               const Tolerances &tol = default_tolerances());

/// rho_rest = sum_n w_n rho^n with w_n = tr(rho P_n) and
/// rho^n = tr_S(rho P_n) / w_n, S = d.subsystem. Components are on the
/// remaining subsystems.
BranchDecomposition improper_mixture(const DensityOperator &rho, const DecompositionOfIdentity &d,
                                     const Tolerances &tol = default_tolerances());
BranchDecomposition improper_mixture(const StateVector &state, const DecompositionOfIdentity &d,
                                     const Tolerances &tol = default_tolerances());

enum class ConditionalForm {
    Plain,     // tr_S(rho P) / tr(rho P)
    Sandwich,  // tr_S(P rho P) / tr(P rho P)
};

/// State of the subsystems other than `subject` (and `also_traced`) conditional
/// on the event `p` on `subject`. Throws UndefinedConditional when the event
/// has probability at or below tol.branch_drop.
DensityOperator conditional_state(const DensityOperator &rho, const Matrix &p,
                                  const Label &subject, ConditionalForm form,
                                  std::span<const Label> also_traced = {},
                                  const Tolerances &tol = default_tolerances());

/// <phi|_S |Psi>, normalized. Throws VanishingOverlap.
StateVector relative_state(const StateVector &psi, std::span<const cplx> subject_vector,
                           const Label &subject, const Tolerances &tol = default_tolerances());
/// Normalized coefficient of |phi> in the expansion of |Psi> over a basis of S
/// that starts with |phi>.
StateVector relative_state_by_expansion(const StateVector &psi,
                                        std::span<const cplx> subject_vector,
                                        const Label &subject,
                                        const Tolerances &tol = default_tolerances());
/// tr_S(|Psi><Psi| |phi><phi|) / <Psi|phi><phi|Psi>
DensityOperator relative_state_by_trace(const StateVector &psi,
                                        std::span<const cplx> subject_vector,
                                        const Label &subject,
                                        const Tolerances &tol = default_tolerances());

/// Relative states of everything but the pointer subsystem, one per pointer
/// position with positive weight.
BranchDecomposition world_branches(const StateVector &state, const SpectralObservable &pointer,
                                   const Tolerances &tol = default_tolerances());

/// Largest trace distance between two branch components.
double max_component_spread(const BranchDecomposition &branches);
/// Smallest trace distance between two distinct branch components (0 if < 2).
double min_component_spread(const BranchDecomposition &branches);

/// Conditional state of the rest computed twice: once tracing `subject` and
/// `spectators` from rho directly, once from tr_spectators(rho).
std::pair<DensityOperator, DensityOperator>
tripartite_conditional_consistency(const DensityOperator &rho, const Matrix &p,
                                   const Label &subject, std::span<const Label> spectators,
                                   const Tolerances &tol = default_tolerances());

/// max_{j != k} ||P_j rho P_k||_F with P acting on d.subsystem.
double coherence_between_branches(const DensityOperator &rho, const DecompositionOfIdentity &d);

/// Proper mixture sum_k w_k |c_k><c_k| of the branch components, renormalized
/// by the kept weight.
DensityOperator proper_mixture(const BranchDecomposition &branches);

struct EnsembleMember {
    double weight;
    StateVector state;
};

/// Proper mixture of pure states on a shared layout; weights positive and
/// summing to one.
class WeightedEnsemble {
  public:
    explicit WeightedEnsemble(std::vector<EnsembleMember> members,
                              const Tolerances &tol = default_tolerances());

    const std::vector<EnsembleMember> &members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    const SubsystemLayout &layout() const { return members_.front().state.layout(); }
    /// sum_k w_k |Psi^k><Psi^k|
    DensityOperator density() const;

  private:
    std::vector<EnsembleMember> members_;
};

struct EnsembleUpdateResult {
    std::vector<std::size_t> members;                // surviving member indices
    std::vector<double> occurrence;                  // <Psi^k|P|Psi^k> for every member
    std::vector<double> new_weights;                 // w'_k, aligned with `members`
    std::vector<DensityOperator> conditional_states; // (rho'_A)^k, aligned with `members`
    DensityOperator aggregate;                       // sum_k w'_k (rho'_A)^k
    double occurrence_probability = 0.0;             // tr(rho P)
};

/// Re-weights the ensemble by the occurrence of `p` on `subject`:
/// w'_k = w_k p_k / sum_j w_j p_j. Members with p_k at or below the drop
/// threshold are removed. Throws UndefinedConditional if nothing survives.
EnsembleUpdateResult ensemble_update(const WeightedEnsemble &ensemble, const Matrix &p,
                                     const Label &subject,
                                     const Tolerances &tol = default_tolerances());

struct MonteCarloResult {
    std::vector<std::uint64_t> prepared;  // N_k
    std::vector<std::uint64_t> accepted;  // N'_k
    std::uint64_t total_accepted = 0;
    std::vector<double> weights;          // N'_k / sum_j N'_j
};

/// Finite-ensemble version of ensemble_update. Each sample draws a member k
/// with probability w_k (first uniform), then lets the event occur with
/// probability <Psi^k|P|Psi^k> (second uniform). Samples are split over
/// `shards` streams seeded by derive_seed(seed, shard); counts are summed, so
/// the result depends on (seed, shards) but not on `jobs`.
MonteCarloResult monte_carlo_update(const WeightedEnsemble &ensemble, const Matrix &p,
                                    const Label &subject, std::uint64_t samples,
                                    std::uint64_t seed, std::size_t shards = 1,
                                    std::size_t jobs = 1);

}  // namespace vnchain
