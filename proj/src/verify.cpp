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

#include "vnchain/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vnchain/chains.hpp"
#include "vnchain/error.hpp"
#include "vnchain/kernels.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

namespace {

struct Cell {
    std::size_t object_dim;
    std::size_t instrument_dim;
};

struct CaseContext {
    Rng &rng;
    Cell cell;
    Corruption corrupt;
};

using CaseFn = std::function<double(CaseContext &)>;

struct Suite {
    const char *name;
    double tolerance;
    CaseFn run;
};

SpectralObservable random_observable(Rng &rng, const Label &label, std::size_t dim,
                                     std::size_t outcomes) {
    std::vector<double> eigenvalues;
    for (std::size_t k = 0; k < outcomes; ++k) {
        eigenvalues.push_back(static_cast<double>(k));
    }
    return {label, eigenvalues, random_decomposition(rng, dim, outcomes)};
}

std::size_t outcomes_for(Rng &rng, std::size_t object_dim, std::size_t instrument_dim) {
    const std::size_t top = std::min(object_dim, instrument_dim);
    return 2 + rng.index(top - 1);
}

SubsystemBasis random_pointer_states(Rng &rng, const Label &label, std::size_t dim,
                                     std::size_t count) {
    const Matrix u = random_unitary(rng, dim);
    std::vector<Vector> vectors;
    for (std::size_t k = 0; k < count; ++k) {
        vectors.push_back(u.column(k));
    }
    return {label, dim, vectors};
}

Premeasurement random_ideal(Rng &rng, Cell cell, const Label &object, const Label &instrument) {
    const std::size_t k = outcomes_for(rng, cell.object_dim, cell.instrument_dim);
    const SpectralObservable measured = random_observable(rng, object, cell.object_dim, k);
    const SubsystemBasis pointer = random_pointer_states(rng, instrument, cell.instrument_dim, k);
    const StateVector ready({{instrument, cell.instrument_dim}},
                            random_state(rng, cell.instrument_dim));
    return build_ideal(measured, pointer, ready);
}

Premeasurement maybe_corrupt(const Premeasurement &pm, Corruption corrupt) {
    return corrupt == Corruption::Phase ? phase_swap_corruption(pm) : pm;
}

double density_diff(const DensityOperator &a, const DensityOperator &b) {
    return max_abs_diff(a.matrix(), b.matrix());
}

Matrix projector_of(const StateVector &v) { return outer(v.span(), v.span()); }

double case_kernels(CaseContext &c) {
    if (!kernels::backend_available(kernels::Backend::Avx2)) {
        return 0.0;
    }
    const auto &s = kernels::table_for(kernels::Backend::Scalar);
    const auto &v = kernels::table_for(kernels::Backend::Avx2);
    const std::size_t n = c.cell.object_dim * c.cell.instrument_dim + c.rng.index(8);
    const Vector a = random_vector(c.rng, n);
    const Vector b = random_vector(c.rng, n);
    const double scale = norm(a) * norm(b) + 1.0;
    double worst = std::abs(s.dotc(a.data(), b.data(), n) - v.dotc(a.data(), b.data(), n)) / scale;
    worst = std::max(worst,
                     std::abs(s.dotu(a.data(), b.data(), n) - v.dotu(a.data(), b.data(), n)) / scale);
    worst = std::max(worst, std::abs(s.norm2(a.data(), n) - v.norm2(a.data(), n)) / scale);
    Vector y1 = b;
    Vector y2 = b;
    const cplx alpha = c.rng.complex_normal();
    s.axpy(alpha, a.data(), y1.data(), n);
    v.axpy(alpha, a.data(), y2.data(), n);
    return std::max(worst, max_abs_diff(y1, y2) / scale);
}

double case_conditions(CaseContext &c) {
    const Premeasurement ideal = random_ideal(c.rng, c.cell, "A", "B");
    const Premeasurement exact = build_exact(ideal, random_dressings(ideal, c.rng));
    const Premeasurement pm = maybe_corrupt(exact, c.corrupt);
    const std::uint64_t seed = c.rng.next_u64();
    double worst = check_calibration(pm, 1, seed).max_residual;
    worst = std::max(worst, check_probability_reproduction(pm, 1, seed).max_residual);
    return std::max(worst, check_dynamical(pm, 1, seed).max_residual);
}

double case_ideal_definitions(CaseContext &c) {
    const Premeasurement base = random_ideal(c.rng, c.cell, "A", "B");
    const Premeasurement pm = maybe_corrupt(base, c.corrupt);
    const std::size_t da = c.cell.object_dim;
    const StateVector phi({{"A", da}}, random_state(c.rng, da));
    const StateVector out = evolve(pm, phi);
    Vector expected(out.dim());
    for (std::size_t k = 0; k < pm.measured().size(); ++k) {
        const Vector term = kron(pm.measured().projector(k) * phi.span(), base.pointer_states()[k]);
        expected = add(expected, term);
    }
    double worst = max_abs_diff(out.span(), expected);
    const Label traced[] = {"B"};
    worst = std::max(worst, density_diff(partial_trace(out, traced),
                                         luders_state(phi, pm.measured())));
    for (std::size_t k = 0; k < pm.measured().size(); ++k) {
        const Vector sharp = normalized(pm.measured().projector(k) * random_vector(c.rng, da));
        const StateVector s({{"A", da}}, sharp);
        worst = std::max(worst, density_diff(partial_trace(evolve(pm, s), traced),
                                             DensityOperator::pure(s)));
    }
    return worst;
}

double case_relative_forms(CaseContext &c) {
    const std::size_t da = std::min<std::size_t>(c.cell.object_dim, 4);
    const std::size_t db = std::min<std::size_t>(c.cell.instrument_dim, 4);
    const SubsystemLayout layout{{"A", da}, {"B", db}};
    const StateVector psi(layout, random_state(c.rng, da * db));
    const Vector phi = random_state(c.rng, db);
    const Matrix first = projector_of(relative_state(psi, phi, "B"));
    const Matrix second = projector_of(relative_state_by_expansion(psi, phi, "B"));
    const Matrix third = relative_state_by_trace(psi, phi, "B").matrix();
    return std::max({max_abs_diff(first, second), max_abs_diff(first, third),
                     max_abs_diff(second, third)});
}

double case_conditional_forms(CaseContext &c) {
    const std::size_t da = c.cell.object_dim;
    const std::size_t db = c.cell.instrument_dim;
    const SubsystemLayout layout{{"A", da}, {"B", db}};
    const DensityOperator rho(layout, random_density(c.rng, da * db));
    const Matrix p = random_projector(c.rng, db, 1 + c.rng.index(db - 1));
    return density_diff(conditional_state(rho, p, "B", ConditionalForm::Plain),
                        conditional_state(rho, p, "B", ConditionalForm::Sandwich));
}

WeightedEnsemble random_ensemble(Rng &rng, const SubsystemLayout &layout, std::size_t members) {
    std::vector<double> w;
    double total = 0.0;
    for (std::size_t k = 0; k < members; ++k) {
        w.push_back(0.05 + rng.uniform());
        total += w.back();
    }
    std::vector<EnsembleMember> out;
    for (std::size_t k = 0; k < members; ++k) {
        out.push_back({w[k] / total, StateVector(layout, random_state(rng, layout.total_dim()))});
    }
    return WeightedEnsemble(out);
}

double case_ensemble_forms(CaseContext &c) {
    const SubsystemLayout layout{{"A", c.cell.object_dim}, {"B", c.cell.instrument_dim}};
    const WeightedEnsemble ens = random_ensemble(c.rng, layout, 2 + c.rng.index(3));
    const Matrix p = random_projector(c.rng, c.cell.instrument_dim,
                                      1 + c.rng.index(c.cell.instrument_dim - 1));
    const EnsembleUpdateResult r = ensemble_update(ens, p, "B");
    const DensityOperator rho = ens.density();
    double weights = 0.0;
    for (double w : r.new_weights) {
        weights += w;
    }
    return std::max({std::abs(weights - 1.0),
                     density_diff(r.aggregate, conditional_state(rho, p, "B", ConditionalForm::Plain)),
                     density_diff(r.aggregate,
                                  conditional_state(rho, p, "B", ConditionalForm::Sandwich))});
}

double case_tripartite(CaseContext &c) {
    const std::size_t da = c.cell.object_dim;
    const std::size_t db = std::min<std::size_t>(c.cell.instrument_dim, 4);
    const SubsystemLayout layout{{"A", da}, {"B", db}, {"C", 2}};
    const DensityOperator rho(layout, random_density(c.rng, layout.total_dim()));
    const Matrix p = random_projector(c.rng, db, 1 + c.rng.index(db - 1));
    const Label spectators[] = {"C"};
    const auto [via_bc, via_ab] = tripartite_conditional_consistency(rho, p, "B", spectators);
    return density_diff(via_bc, via_ab);
}

double case_decoherence(CaseContext &c) {
    const Premeasurement first = random_ideal(c.rng, c.cell, "A", "B");
    const std::size_t positions = first.pointer().size();
    const std::size_t dc = positions;
    const SubsystemBasis c_states = random_pointer_states(c.rng, "C", dc, positions);
    const Premeasurement second =
        build_ideal(first.pointer(), c_states, StateVector::basis({{"C", dc}}, 0));
    const StateVector phi({{"A", c.cell.object_dim}}, random_state(c.rng, c.cell.object_dim));
    const ChainResult chain = run_two_link_chain(first, second, phi);
    const Label traced[] = {"C"};
    const DensityOperator rho_ab = partial_trace(chain.final_state, traced);
    double worst = coherence_between_branches(rho_ab, first.pointer().decomposition());
    worst = std::max(worst, std::abs(DensityOperator::pure(chain.final_state).purity() - 1.0));
    Vector resummed(chain.final_state.dim());
    const Label b_label[] = {"B"};
    for (std::size_t k = 0; k < positions; ++k) {
        const Vector fb = apply_local(first.pointer().projector(k), b_label,
                                      chain.intermediate.layout(), chain.intermediate.span());
        resummed = add(resummed, kron(fb, second.pointer_states()[k]));
    }
    return std::max(worst, max_abs_diff(resummed, chain.final_state.span()));
}

double case_absoluteness(CaseContext &c) {
    const Premeasurement pm = random_ideal(c.rng, c.cell, "A", "B");
    const StateVector phi({{"A", c.cell.object_dim}}, random_state(c.rng, c.cell.object_dim));
    const DensityOperator proper = proper_mixture(branch_decomposition(evolve(pm, phi), pm.pointer()));
    const DensityOperator rho_c({{"C", 2}}, random_density(c.rng, 2));
    const Label traced[] = {"C"};
    return density_diff(partial_trace(tensor(proper, rho_c), traced), proper);
}

double case_born_weights(CaseContext &c) {
    const Premeasurement pm = random_ideal(c.rng, c.cell, "A", "B");
    const StateVector phi({{"A", c.cell.object_dim}}, random_state(c.rng, c.cell.object_dim));
    const StateVector out = evolve(pm, phi);
    const DecompositionOfIdentity d = pm.pointer().decomposition();
    const BranchDecomposition mixture = improper_mixture(out, d);
    const BranchDecomposition branches = branch_decomposition(out, pm.pointer());
    const DensityOperator rho = DensityOperator::pure(out);
    double worst = std::abs(mixture.total_weight() - 1.0);
    for (const auto &b : mixture.branches) {
        const double born =
            (rho.matrix() * embed_operator(d.projectors[b.index], "B", rho.layout())).trace().real();
        worst = std::max(worst, std::abs(b.weight - born));
        for (const auto &other : branches.branches) {
            if (other.index == b.index) {
                worst = std::max(worst, std::abs(other.weight - b.weight));
            }
        }
    }
    return worst;
}

double case_redecomposition(CaseContext &c) {
    const SubsystemLayout layout{{"A", c.cell.object_dim}, {"B", c.cell.instrument_dim}};
    const WeightedEnsemble ens = random_ensemble(c.rng, layout, 2 + c.rng.index(3));
    const HermitianEigen eig = eigh(ens.density().matrix());
    std::vector<EnsembleMember> spectral;
    double total = 0.0;
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
        if (eig.values[j] > 1e-13) {
            spectral.push_back({eig.values[j], StateVector(layout, normalized(eig.vectors.column(j)))});
            total += eig.values[j];
        }
    }
    for (auto &m : spectral) {
        m.weight /= total;
    }
    const WeightedEnsemble other(spectral);
    const Matrix p = random_projector(c.rng, c.cell.instrument_dim,
                                      1 + c.rng.index(c.cell.instrument_dim - 1));
    return density_diff(ensemble_update(ens, p, "B").aggregate,
                        ensemble_update(other, p, "B").aggregate);
}

double case_world_product(CaseContext &c) {
    const std::size_t da = c.cell.object_dim;
    const std::size_t db = std::min<std::size_t>(c.cell.instrument_dim, 4);
    const StateVector ab2({{"A", da}, {"B2", 2}}, random_state(c.rng, da * 2));
    const StateVector b1({{"B1", db}}, random_state(c.rng, db));
    const Label order[] = {"A", "B1", "B2"};
    const StateVector psi = permute(tensor(ab2, b1), order);
    const BranchDecomposition bd =
        world_branches(psi, random_observable(c.rng, "B1", db, 2 + c.rng.index(db - 1)));
    return std::max(max_component_spread(bd), std::abs(bd.total_weight() - 1.0));
}

const std::vector<Suite> &suites() {
    static const std::vector<Suite> table = {
        {"kernel-equivalence", 1e-12, case_kernels},
        {"premeasurement-conditions", kConditionTolerance, case_conditions},
        {"ideal-definitions", 1e-10, case_ideal_definitions},
        {"relative-state-forms", 1e-10, case_relative_forms},
        {"conditional-forms", 1e-10, case_conditional_forms},
        {"ensemble-update-forms", 1e-10, case_ensemble_forms},
        {"tripartite-consistency", 1e-10, case_tripartite},
        {"chain-decoherence", 1e-10, case_decoherence},
        {"proper-mixture-absoluteness", 1e-12, case_absoluteness},
        {"born-weights", 1e-12, case_born_weights},
        {"ensemble-redecomposition", 1e-10, case_redecomposition},
        {"world-branches-product", 1e-10, case_world_product},
    };
    return table;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

}  // namespace

Corruption parse_corruption(const std::string &name) {
    if (name == "none") {
        return Corruption::None;
    }
    if (name == "phase") {
        return Corruption::Phase;
    }
    fail(ErrorCode::Validation, "unknown corruption mode '" + name + "' (none, phase)");
}

VerifyOptions grid_up_to(std::size_t max_object, std::size_t max_instrument) {
    if (max_object < 2 || max_instrument < 2) {
        fail(ErrorCode::Validation, "grid dimensions must be at least 2");
    }
    VerifyOptions o;
    o.object_dims.clear();
    o.instrument_dims.clear();
    for (std::size_t d = 2; d <= max_object; ++d) {
        o.object_dims.push_back(d);
    }
    for (std::size_t d = 2; d <= max_instrument; ++d) {
        o.instrument_dims.push_back(d);
    }
    return o;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto &s : suites()) {
        out.push_back(s.name);
    }
    return out;
}

VerifyReport verify(const VerifyOptions &options) {
    VerifyReport report;
    std::vector<Cell> cells;
    for (std::size_t a : options.object_dims) {
        for (std::size_t b : options.instrument_dims) {
            if (a < 2 || b < 2) {
                fail(ErrorCode::Validation, "grid dimensions must be at least 2");
            }
            cells.push_back({a, b});
        }
    }
    const auto &table = suites();
    if (options.trials == 0 || cells.empty()) {
        report.warnings.push_back("empty suite: no cases were run");
        for (const auto &s : table) {
            report.suites.push_back({s.name, 0, 0, 0.0, s.tolerance, ""});
        }
        return report;
    }

    // One task per (suite, cell); each has its own seed, so any schedule gives the same report.
    struct Task {
        std::size_t suite;
        std::size_t cell;
        SuiteResult partial;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < table.size(); ++s) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            tasks.push_back({s, c, {}});
        }
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            Task &task = tasks[i];
            const Suite &suite = table[task.suite];
            Rng rng(derive_seed(derive_seed(options.seed, task.suite), task.cell));
            CaseContext ctx{rng, cells[task.cell], options.corrupt};
            SuiteResult &r = task.partial;
            for (std::size_t t = 0; t < options.trials; ++t) {
                ++r.cases;
                try {
                    const double residual = suite.run(ctx);
                    r.max_residual = std::max(r.max_residual, residual);
                    if (!(residual <= suite.tolerance)) {
                        if (r.failures++ == 0) {
                            r.first_failure = "dims " + std::to_string(ctx.cell.object_dim) + "x" +
                                              std::to_string(ctx.cell.instrument_dim) + " trial " +
                                              std::to_string(t) + ": residual " + sci(residual);
                        }
                    }
                } catch (const Error &e) {
                    if (r.failures++ == 0) {
                        r.first_failure = "dims " + std::to_string(ctx.cell.object_dim) + "x" +
                                          std::to_string(ctx.cell.instrument_dim) + " trial " +
                                          std::to_string(t) + ": " + e.what();
                    }
                }
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }

    for (std::size_t s = 0; s < table.size(); ++s) {
        SuiteResult total{table[s].name, 0, 0, 0.0, table[s].tolerance, ""};
        for (const Task &task : tasks) {
            if (task.suite != s) {
                continue;
            }
            total.cases += task.partial.cases;
            total.max_residual = std::max(total.max_residual, task.partial.max_residual);
            if (task.partial.failures > 0 && total.failures == 0) {
                total.first_failure = task.partial.first_failure;
            }
            total.failures += task.partial.failures;
        }
        report.pass = report.pass && total.pass();
        report.suites.push_back(total);
    }
    return report;
}

std::string render_verify(const VerifyReport &report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json doc;
        doc["warnings"] = report.warnings;
        nlohmann::ordered_json suites = nlohmann::ordered_json::array();
        for (const auto &s : report.suites) {
            suites.push_back({{"suite", s.name},
                              {"cases", s.cases},
                              {"failures", s.failures},
                              {"max_residual", s.max_residual},
                              {"tolerance", s.tolerance},
                              {"pass", s.pass()},
                              {"first_failure", s.first_failure}});
        }
        doc["suites"] = suites;
        doc["pass"] = report.pass;
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    const char sep = format == ReportFormat::Tsv ? '\t' : ' ';
    for (const auto &w : report.warnings) {
        os << "warning" << sep << w << "\n";
    }
    std::size_t width = 5;
    for (const auto &s : report.suites) {
        width = std::max(width, s.name.size());
    }
    auto pad = [&](const std::string &text, std::size_t w) {
        return format == ReportFormat::Tsv ? text : text + std::string(w - std::min(w, text.size()), ' ');
    };
    os << pad("suite", width) << sep << pad("cases", 7) << sep << pad("failures", 8) << sep
       << pad("max_residual", 12) << sep << pad("tolerance", 10) << sep << "status\n";
    for (const auto &s : report.suites) {
        os << pad(s.name, width) << sep << pad(std::to_string(s.cases), 7) << sep
           << pad(std::to_string(s.failures), 8) << sep << pad(sci(s.max_residual), 12) << sep
           << pad(sci(s.tolerance), 10) << sep << (s.pass() ? "PASS" : "FAIL") << "\n";
        if (!s.pass()) {
            os << pad("", width) << sep << "first failure: " << s.first_failure << "\n";
        }
    }
    os << "overall" << sep << (report.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace vnchain
