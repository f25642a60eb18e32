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

#include "vnchain/chains.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "vnchain/error.hpp"
#include "vnchain/kernels.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

namespace {

void require_projector(const Matrix &p, const Tolerances &tol) {
    if (projector_residual(p) > tol.projector) {
        fail(ErrorCode::NotProjector, "event is not an orthogonal projector");
    }
}

void require_decomposition(const SubsystemLayout &layout, const DecompositionOfIdentity &d,
                           const Tolerances &tol) {
    const std::size_t dim = layout.dim(d.subsystem);
    const DecompositionReport report = check_decomposition(d, tol);
    if (!report.pass) {
        fail(ErrorCode::InvalidDecomposition, "projectors on '" + d.subsystem +
                                                  "' are not a decomposition of the identity");
    }
    if (d.projectors.front().rows() != dim) {
        fail(ErrorCode::DimensionMismatch, "decomposition does not fit '" + d.subsystem + "'");
    }
}

Vector unit_subject(std::span<const cplx> v, const Tolerances &tol) {
    if (std::abs(norm(v) - 1.0) > tol.norm) {
        fail(ErrorCode::NotNormalized, "subject vector must be a unit vector");
    }
    return {v.begin(), v.end()};
}

}  // namespace

StateVector apply_coupling(const Premeasurement &pm, const StateVector &state) {
    const Label labels[] = {pm.object_label(), pm.instrument_label()};
    if (state.layout().dim(pm.object_label()) != pm.object_dim() ||
        state.layout().dim(pm.instrument_label()) != pm.instrument_dim()) {
        fail(ErrorCode::DimensionMismatch, "premeasurement does not fit " +
                                               state.layout().describe());
    }
    Vector out = apply_local(pm.unitary(), labels, state.layout(), state.span());
    if (state.is_normalized()) {
        return {state.layout(), std::move(out)};
    }
    return StateVector::unnormalized(state.layout(), std::move(out));
}

ChainResult run_two_link_chain(const Premeasurement &first, const Premeasurement &second,
                               const StateVector &object_state, const Tolerances &tol) {
    if (second.object_label() != first.instrument_label() ||
        second.object_dim() != first.instrument_dim()) {
        fail(ErrorCode::ObservableMismatch,
             "second link must measure the first link's instrument '" +
                 first.instrument_label() + "'");
    }
    if (second.measured().size() != first.pointer().size()) {
        fail(ErrorCode::ObservableMismatch, "second link measures a different observable");
    }
    for (std::size_t k = 0; k < first.pointer().size(); ++k) {
        bool matched = false;
        for (const auto &b : second.measured().branches()) {
            if (max_abs_diff(b.projector, first.pointer().projector(k)) <= 1e-9) {
                matched = true;
                break;
            }
        }
        if (!matched) {
            fail(ErrorCode::ObservableMismatch,
                 "pointer position " + std::to_string(k) + " is not measured by the second link");
        }
    }
    (void)tol;
    ChainResult result;
    result.intermediate = evolve(first, object_state);
    const StateVector with_observer = tensor(result.intermediate, second.ready_state());
    result.final_state = apply_coupling(second, with_observer);
    return result;
}

BranchDecomposition improper_mixture(const DensityOperator &rho, const DecompositionOfIdentity &d,
                                     const Tolerances &tol) {
    require_decomposition(rho.layout(), d, tol);
    const Label traced[] = {d.subsystem};
    const SubsystemLayout rest = rho.layout().without(traced);
    BranchDecomposition out{d.subsystem, {}, 0.0};
    for (std::size_t n = 0; n < d.projectors.size(); ++n) {
        const Matrix weighted = rho.matrix() * embed_operator(d.projectors[n], d.subsystem, rho.layout());
        Matrix reduced = partial_trace(rho.layout(), weighted, traced);
        const double w = reduced.trace().real();
        if (w > tol.branch_drop) {
            reduced *= 1.0 / w;
            out.branches.push_back({n, w, DensityOperator(rest, std::move(reduced), tol)});
        } else {
            out.dropped_weight += w;
        }
    }
    return out;
}

BranchDecomposition improper_mixture(const StateVector &state, const DecompositionOfIdentity &d,
                                     const Tolerances &tol) {
    require_decomposition(state.layout(), d, tol);
    const Label traced[] = {d.subsystem};
    BranchDecomposition out{d.subsystem, {}, 0.0};
    for (std::size_t n = 0; n < d.projectors.size(); ++n) {
        Vector v = apply_local(d.projectors[n], traced, state.layout(), state.span());
        const double w = kernels::norm2(v);
        if (w > tol.branch_drop) {
            const StateVector selected(state.layout(), scaled(v, 1.0 / std::sqrt(w)));
            out.branches.push_back({n, w, partial_trace(selected, traced)});
        } else {
            out.dropped_weight += w;
        }
    }
    return out;
}

DensityOperator conditional_state(const DensityOperator &rho, const Matrix &p,
                                  const Label &subject, ConditionalForm form,
                                  std::span<const Label> also_traced, const Tolerances &tol) {
    require_projector(p, tol);
    const Matrix event = embed_operator(p, subject, rho.layout());
    std::vector<Label> traced{subject};
    traced.insert(traced.end(), also_traced.begin(), also_traced.end());
    const Matrix numerator_full =
        form == ConditionalForm::Plain ? rho.matrix() * event : event * rho.matrix() * event;
    const double probability = numerator_full.trace().real();
    if (probability <= tol.branch_drop) {
        fail(ErrorCode::UndefinedConditional,
             "conditioning event has probability " + std::to_string(probability));
    }
    Matrix reduced = partial_trace(rho.layout(), numerator_full, traced);
    reduced *= 1.0 / probability;
    return {rho.layout().without(traced), std::move(reduced), tol};
}

StateVector relative_state(const StateVector &psi, std::span<const cplx> subject_vector,
                           const Label &subject, const Tolerances &tol) {
    const Vector phi = unit_subject(subject_vector, tol);
    const StateVector overlap = partial_scalar_product(phi, subject, psi);
    const double w = kernels::norm2(overlap.span());
    if (w <= tol.branch_drop) {
        fail(ErrorCode::VanishingOverlap, "subject state has vanishing overlap with the state");
    }
    return overlap.normalize();
}

StateVector relative_state_by_expansion(const StateVector &psi,
                                        std::span<const cplx> subject_vector,
                                        const Label &subject, const Tolerances &tol) {
    const Vector phi = unit_subject(subject_vector, tol);
    const SubsystemBasis basis(subject, psi.layout().dim(subject), {phi}, tol);
    const auto terms = expand_in_basis(psi, basis);
    const StateVector &coefficient = terms.front().coefficient;
    if (kernels::norm2(coefficient.span()) <= tol.branch_drop) {
        fail(ErrorCode::VanishingOverlap, "subject state has vanishing overlap with the state");
    }
    return coefficient.normalize();
}

DensityOperator relative_state_by_trace(const StateVector &psi,
                                        std::span<const cplx> subject_vector,
                                        const Label &subject, const Tolerances &tol) {
    const Vector phi = unit_subject(subject_vector, tol);
    try {
        return conditional_state(DensityOperator::pure(psi), outer(phi, phi), subject,
                                 ConditionalForm::Plain, {}, tol);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::UndefinedConditional) {
            fail(ErrorCode::VanishingOverlap, "subject state has vanishing overlap with the state");
        }
        throw;
    }
}

BranchDecomposition world_branches(const StateVector &state, const SpectralObservable &pointer,
                                   const Tolerances &tol) {
    const Label traced[] = {pointer.subsystem()};
    if (state.layout().dim(pointer.subsystem()) != pointer.dim()) {
        fail(ErrorCode::DimensionMismatch, "pointer observable does not fit its subsystem");
    }
    const DensityOperator rho = DensityOperator::pure(state);
    BranchDecomposition out{pointer.subsystem(), {}, 0.0};
    for (const auto &b : pointer.branches()) {
        const Vector v = apply_local(b.projector, traced, state.layout(), state.span());
        const double w = kernels::norm2(v);
        if (w > tol.branch_drop) {
            out.branches.push_back({b.index, w,
                                    conditional_state(rho, b.projector, pointer.subsystem(),
                                                      ConditionalForm::Plain, {}, tol)});
        } else {
            out.dropped_weight += w;
        }
    }
    return out;
}

double max_component_spread(const BranchDecomposition &branches) {
    double worst = 0.0;
    for (std::size_t i = 0; i < branches.branches.size(); ++i) {
        const Matrix a = component_density(branches.branches[i].component).matrix();
        for (std::size_t j = 0; j < i; ++j) {
            const Matrix b = component_density(branches.branches[j].component).matrix();
            worst = std::max(worst, trace_distance(a, b));
        }
    }
    return worst;
}

double min_component_spread(const BranchDecomposition &branches) {
    if (branches.branches.size() < 2) {
        return 0.0;
    }
    double best = INFINITY;
    for (std::size_t i = 0; i < branches.branches.size(); ++i) {
        const Matrix a = component_density(branches.branches[i].component).matrix();
        for (std::size_t j = 0; j < i; ++j) {
            const Matrix b = component_density(branches.branches[j].component).matrix();
            best = std::min(best, trace_distance(a, b));
        }
    }
    return best;
}

std::pair<DensityOperator, DensityOperator>
tripartite_conditional_consistency(const DensityOperator &rho, const Matrix &p,
                                   const Label &subject, std::span<const Label> spectators,
                                   const Tolerances &tol) {
    DensityOperator direct =
        conditional_state(rho, p, subject, ConditionalForm::Plain, spectators, tol);
    const DensityOperator reduced = partial_trace(rho, spectators);
    DensityOperator via_reduced =
        conditional_state(reduced, p, subject, ConditionalForm::Plain, {}, tol);
    return {std::move(direct), std::move(via_reduced)};
}

double coherence_between_branches(const DensityOperator &rho, const DecompositionOfIdentity &d) {
    std::vector<Matrix> embedded;
    for (const auto &p : d.projectors) {
        embedded.push_back(embed_operator(p, d.subsystem, rho.layout()));
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < embedded.size(); ++j) {
        const Matrix left = embedded[j] * rho.matrix();
        for (std::size_t k = 0; k < embedded.size(); ++k) {
            if (j != k) {
                worst = std::max(worst, frobenius_norm(left * embedded[k]));
            }
        }
    }
    return worst;
}

DensityOperator proper_mixture(const BranchDecomposition &branches) {
    if (branches.branches.empty()) {
        fail(ErrorCode::InvalidEnsemble, "proper mixture of no branches");
    }
    const DensityOperator first = component_density(branches.branches.front().component);
    Matrix sum(first.dim(), first.dim());
    for (const auto &b : branches.branches) {
        sum += component_density(b.component).matrix() * b.weight;
    }
    sum *= 1.0 / branches.kept_weight();
    return {first.layout(), std::move(sum)};
}

WeightedEnsemble::WeightedEnsemble(std::vector<EnsembleMember> members, const Tolerances &tol)
    : members_(std::move(members)) {
    if (members_.empty()) {
        fail(ErrorCode::InvalidEnsemble, "ensemble has no members");
    }
    double total = 0.0;
    for (const auto &m : members_) {
        if (!(m.weight > 0.0)) {
            fail(ErrorCode::InvalidEnsemble, "ensemble weights must be positive");
        }
        if (!m.state.is_normalized()) {
            fail(ErrorCode::NotNormalized, "ensemble members must be normalized states");
        }
        if (!(m.state.layout() == members_.front().state.layout())) {
            fail(ErrorCode::LayoutConflict, "ensemble members live on different layouts");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > tol.norm) {
        fail(ErrorCode::InvalidEnsemble, "ensemble weights sum to " + std::to_string(total));
    }
}

DensityOperator WeightedEnsemble::density() const {
    const std::size_t d = layout().total_dim();
    Matrix rho(d, d);
    for (const auto &m : members_) {
        rho += outer(m.state.span(), m.state.span()) * m.weight;
    }
    return {layout(), std::move(rho)};
}

namespace {

std::vector<double> occurrence_probabilities(const WeightedEnsemble &ensemble, const Matrix &p,
                                             const Label &subject) {
    const Label labels[] = {subject};
    std::vector<double> out;
    for (const auto &m : ensemble.members()) {
        const Vector v = apply_local(p, labels, m.state.layout(), m.state.span());
        out.push_back(std::clamp(kernels::norm2(v), 0.0, 1.0));
    }
    return out;
}

}  // namespace

EnsembleUpdateResult ensemble_update(const WeightedEnsemble &ensemble, const Matrix &p,
                                     const Label &subject, const Tolerances &tol) {
    require_projector(p, tol);
    const Label labels[] = {subject};
    EnsembleUpdateResult result;
    result.occurrence = occurrence_probabilities(ensemble, p, subject);
    double total = 0.0;
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        total += ensemble.members()[k].weight * result.occurrence[k];
    }
    if (total <= tol.branch_drop) {
        fail(ErrorCode::UndefinedConditional,
             "event has total occurrence probability " + std::to_string(total));
    }
    result.occurrence_probability = total;
    const SubsystemLayout rest = ensemble.layout().without(labels);
    Matrix aggregate(rest.total_dim(), rest.total_dim());
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        const double pk = result.occurrence[k];
        if (pk <= tol.branch_drop) {
            continue;
        }
        const auto &member = ensemble.members()[k];
        const Vector selected = apply_local(p, labels, member.state.layout(), member.state.span());
        const StateVector after(member.state.layout(), scaled(selected, 1.0 / std::sqrt(pk)));
        DensityOperator conditional = partial_trace(after, labels);
        const double w = member.weight * pk / total;
        aggregate += conditional.matrix() * w;
        result.members.push_back(k);
        result.new_weights.push_back(w);
        result.conditional_states.push_back(std::move(conditional));
    }
    result.aggregate = DensityOperator(rest, std::move(aggregate), tol);
    return result;
}

MonteCarloResult monte_carlo_update(const WeightedEnsemble &ensemble, const Matrix &p,
                                    const Label &subject, std::uint64_t samples,
                                    std::uint64_t seed, std::size_t shards, std::size_t jobs) {
    if (samples == 0) {
        fail(ErrorCode::Validation, "Monte Carlo update needs at least one sample");
    }
    require_projector(p, default_tolerances());
    shards = std::max<std::size_t>(shards, 1);
    jobs = std::max<std::size_t>(jobs, 1);
    const std::vector<double> occurrence = occurrence_probabilities(ensemble, p, subject);
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto &m : ensemble.members()) {
        acc += m.weight;
        cumulative.push_back(acc);
    }
    const std::size_t members = ensemble.size();

    struct Counts {
        std::vector<std::uint64_t> prepared;
        std::vector<std::uint64_t> accepted;
    };
    auto run_shard = [&](std::size_t shard) {
        Counts c{std::vector<std::uint64_t>(members), std::vector<std::uint64_t>(members)};
        std::uint64_t n = samples / shards + (shard < samples % shards ? 1 : 0);
        Rng rng(derive_seed(seed, shard));
        for (; n > 0; --n) {
            const double u = rng.uniform() * acc;
            std::size_t k = 0;
            while (k + 1 < members && u >= cumulative[k]) {
                ++k;
            }
            ++c.prepared[k];
            if (rng.uniform() < occurrence[k]) {
                ++c.accepted[k];
            }
        }
        return c;
    };

    std::vector<Counts> per_shard(shards);
    for (std::size_t start = 0; start < shards; start += jobs) {
        const std::size_t end = std::min(shards, start + jobs);
        std::vector<std::future<Counts>> running;
        for (std::size_t s = start + 1; s < end; ++s) {
            running.push_back(std::async(std::launch::async, run_shard, s));
        }
        per_shard[start] = run_shard(start);
        for (std::size_t s = start + 1; s < end; ++s) {
            per_shard[s] = running[s - start - 1].get();
        }
    }

    MonteCarloResult result;
    result.prepared.assign(members, 0);
    result.accepted.assign(members, 0);
    for (const auto &c : per_shard) {
        for (std::size_t k = 0; k < members; ++k) {
            result.prepared[k] += c.prepared[k];
            result.accepted[k] += c.accepted[k];
        }
    }
    for (std::uint64_t a : result.accepted) {
        result.total_accepted += a;
    }
    if (result.total_accepted == 0) {
        fail(ErrorCode::ZeroAccepted, "the event never occurred in the sample");
    }
    for (std::uint64_t a : result.accepted) {
        result.weights.push_back(static_cast<double>(a) /
                                 static_cast<double>(result.total_accepted));
    }
    return result;
}

}  // namespace vnchain
