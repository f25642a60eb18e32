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

#include "vnchain/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "vnchain/chains.hpp"
#include "vnchain/error.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

using json = nlohmann::ordered_json;

namespace {

template <typename F>
auto annotated(const std::string &where, F &&body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error &e) {
        fail(e.code(), where + ": " + e.message());
    }
}

std::string fixed(double x, int digits) {
    if (std::abs(x) < 0.5 * std::pow(10.0, -digits)) {
        x = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string populations(const DensityOperator &rho) {
    std::string out = "[";
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        out += (i ? ", " : "") + fixed(rho.matrix()(i, i).real(), 6);
    }
    return out + "]";
}

struct Simulation {
    std::vector<Premeasurement> links;
    std::vector<StateVector> states;
};

StateVector prepare(const Scenario &scenario, const Tolerances &tol) {
    StateVector state;
    bool first = true;
    for (const auto &init : scenario.initial) {
        const StateVector factor = materialize_state(
            init.state, scenario.layout.select(init.labels), "initial", tol);
        state = first ? factor : tensor(state, factor);
        first = false;
    }
    return state;
}

std::vector<StateVector> propagate(const Scenario &scenario, const std::vector<Premeasurement> &links,
                                   StateVector state) {
    std::vector<StateVector> out;
    for (std::size_t t = 0; t < links.size(); ++t) {
        annotated("stage " + std::to_string(t), [&] {
            const Premeasurement &pm = links[t];
            if (state.layout().empty()) {
                state = pm.ready_state();
            } else if (!state.layout().contains(pm.instrument_label())) {
                state = tensor(state, pm.ready_state());
            }
            state = apply_coupling(pm, state);
            return 0;
        });
        out.push_back(state);
    }
    (void)scenario;
    return out;
}

BranchTable table_from(const std::string &title, const BranchDecomposition &bd,
                       const std::function<std::string(const Branch &)> &summary) {
    BranchTable t{title, {}, bd.dropped_weight};
    for (const auto &b : bd.branches) {
        t.rows.push_back({b.index, b.weight, summary(b)});
    }
    return t;
}

}  // namespace

double BranchTable::total() const {
    double s = dropped_weight;
    for (const auto &r : rows) {
        s += r.weight;
    }
    return s;
}

ReportFormat parse_report_format(const std::string &name) {
    if (name == "text") {
        return ReportFormat::Text;
    }
    if (name == "tsv") {
        return ReportFormat::Tsv;
    }
    if (name == "json") {
        return ReportFormat::Json;
    }
    fail(ErrorCode::Validation, "unknown format '" + name + "' (text, tsv, json)");
}

RunReport run_scenario(const Scenario &scenario, const RunOptions &options) {
    const Tolerances &tol = options.tol;
    RunReport report;
    report.scenario = scenario.name;
    report.seed = options.seed;
    report.check_tolerance = options.check_tolerance;

    std::vector<Premeasurement> links;
    for (std::size_t t = 0; t < scenario.stages.size(); ++t) {
        links.push_back(annotated("stage " + std::to_string(t),
                                  [&] { return build_stage(scenario, t, tol); }));
    }
    const std::vector<StateVector> states = propagate(scenario, links, prepare(scenario, tol));
    const StateVector &final_state = states.back();
    report.layout = final_state.layout();
    for (std::size_t t = 0; t < links.size(); ++t) {
        const StageSpec &s = scenario.stages[t];
        report.stages.push_back({t, s.object, s.instrument, s.kind, states[t]});
    }

    for (std::size_t i = 0; i < scenario.analyses.size(); ++i) {
        const AnalysisSpec &a = scenario.analyses[i];
        annotated("analyses[" + std::to_string(i) + "] (" + a.type + ")", [&] {
            if (a.type == "branches") {
                for (std::size_t t = 0; t < links.size(); ++t) {
                    const Premeasurement &pm = links[t];
                    const BranchDecomposition bd =
                        branch_decomposition(states[t], pm.pointer(), tol);
                    const Label object[] = {pm.object_label()};
                    const std::vector<Label> others = states[t].layout().without(object).labels();
                    report.tables.push_back(table_from(
                        "branches after stage " + std::to_string(t) + " (pointer on " +
                            pm.instrument_label() + ")",
                        bd, [&](const Branch &b) {
                            const DensityOperator reduced =
                                partial_trace(std::get<StateVector>(b.component), others);
                            return pm.object_label() + " populations " + populations(reduced);
                        }));
                }
            } else if (a.type == "improper_mixture") {
                const Label &subject = *a.subsystem;
                const SpectralObservable decomposition = pointer_on(scenario, subject, tol);
                const BranchDecomposition bd =
                    improper_mixture(final_state, decomposition.decomposition(), tol);
                report.tables.push_back(table_from(
                    "improper mixture relative to " + subject, bd, [&](const Branch &b) {
                        return "purity " + fixed(component_density(b.component).purity(), 12);
                    }));
                const std::string prefix = "improper_mixture[" + subject + "].";
                const DensityOperator whole = DensityOperator::pure(final_state);
                report.metrics.push_back({prefix + "total_purity", whole.purity()});
                const Label traced[] = {subject};
                const DensityOperator reduced = partial_trace(final_state, traced);
                report.metrics.push_back({prefix + "reduced_purity", reduced.purity()});
                std::optional<Label> blocks = a.blocks;
                if (!blocks) {
                    for (const auto &s : scenario.stages) {
                        if (s.instrument == subject) {
                            blocks = s.object;
                        }
                    }
                }
                if (blocks && *blocks != subject) {
                    report.metrics.push_back(
                        {prefix + "offdiag_blocks[" + *blocks + "]",
                         coherence_between_branches(
                             reduced, pointer_on(scenario, *blocks, tol).decomposition())});
                }
            } else if (a.type == "world_branches") {
                const SpectralObservable pointer = pointer_on(scenario, *a.pointer, tol);
                const BranchDecomposition bd = world_branches(final_state, pointer, tol);
                report.tables.push_back(table_from(
                    "world branches of " + *a.pointer, bd, [&](const Branch &b) {
                        const DensityOperator rho = component_density(b.component);
                        return "purity " + fixed(rho.purity(), 12) + " populations " +
                               populations(rho);
                    }));
                const std::string prefix = "world_branches[" + *a.pointer + "].";
                report.metrics.push_back({prefix + "max_spread", max_component_spread(bd)});
                report.metrics.push_back({prefix + "min_spread", min_component_spread(bd)});
            } else if (a.type == "ensemble_update") {
                const Label &object = scenario.stages.front().object;
                std::vector<EnsembleMember> members;
                for (const auto &m : a.members) {
                    Scenario variant = scenario;
                    for (auto &init : variant.initial) {
                        if (init.labels.size() == 1 && init.labels.front() == object) {
                            init.state = m.state;
                        }
                    }
                    members.push_back({m.weight, propagate(variant, links, prepare(variant, tol)).back()});
                }
                const WeightedEnsemble ensemble(members, tol);
                Label subject;
                Matrix p;
                if (a.event_stage) {
                    const Premeasurement &pm = links.at(*a.event_stage);
                    subject = pm.instrument_label();
                    p = pm.pointer().projector(*a.event_branch);
                } else {
                    subject = *a.subsystem;
                    p = materialize_matrix(*a.event_projector, scenario.layout.dim(subject),
                                           "event.projector");
                }
                const EnsembleUpdateResult r = ensemble_update(ensemble, p, subject, tol);
                BranchTable table{"ensemble update on " + subject, {}, 0.0};
                for (std::size_t j = 0; j < r.members.size(); ++j) {
                    table.rows.push_back(
                        {r.members[j], r.new_weights[j],
                         "occurrence " + fixed(r.occurrence[r.members[j]], 12) + " populations " +
                             populations(r.conditional_states[j])});
                }
                report.tables.push_back(table);
                report.metrics.push_back({"ensemble_update.occurrence_probability",
                                          r.occurrence_probability});
                report.metrics.push_back({"ensemble_update.aggregate_purity", r.aggregate.purity()});
                if (a.monte_carlo_samples > 0) {
                    const MonteCarloResult mc =
                        monte_carlo_update(ensemble, p, subject, a.monte_carlo_samples,
                                           derive_seed(options.seed, 1000 + i));
                    BranchTable mct{"monte carlo update on " + subject + " (" +
                                        std::to_string(a.monte_carlo_samples) + " samples)",
                                    {}, 0.0};
                    double worst = 0.0;
                    for (std::size_t k = 0; k < ensemble.size(); ++k) {
                        mct.rows.push_back({k, mc.weights[k],
                                            "accepted " + std::to_string(mc.accepted[k]) +
                                                " of " + std::to_string(mc.prepared[k])});
                        double exact = 0.0;
                        for (std::size_t j = 0; j < r.members.size(); ++j) {
                            if (r.members[j] == k) {
                                exact = r.new_weights[j];
                            }
                        }
                        worst = std::max(worst, std::abs(mc.weights[k] - exact));
                    }
                    report.tables.push_back(mct);
                    report.metrics.push_back({"monte_carlo.max_weight_deviation", worst});
                }
            } else if (a.type == "condition_reports") {
                const std::size_t trials = a.trials.value_or(20);
                for (std::size_t t = 0; t < links.size(); ++t) {
                    const std::uint64_t seed = derive_seed(options.seed, t);
                    for (const auto &rep :
                         {check_calibration(links[t], trials, seed, options.check_tolerance),
                          check_probability_reproduction(links[t], trials, seed,
                                                         options.check_tolerance),
                          check_dynamical(links[t], trials, seed, options.check_tolerance)}) {
                        report.conditions.push_back({t, rep});
                    }
                }
            } else {
                fail(ErrorCode::Validation, "unknown analysis");
            }
            return 0;
        });
    }

    for (const auto &t : report.tables) {
        report.max_weight_sum_residual =
            std::max(report.max_weight_sum_residual, std::abs(t.total() - 1.0));
    }
    for (const auto &c : report.conditions) {
        report.max_condition_residual =
            std::max(report.max_condition_residual, c.report.max_residual);
        report.pass = report.pass && c.report.pass;
    }
    report.pass = report.pass && report.max_weight_sum_residual <= options.check_tolerance;
    return report;
}

namespace {

using Rows = std::vector<std::vector<std::string>>;

void aligned(std::ostringstream &os, const Rows &rows) {
    std::vector<std::size_t> width;
    for (const auto &r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t c = 0; c < r.size(); ++c) {
            width[c] = std::max(width[c], r[c].size());
        }
    }
    for (const auto &r : rows) {
        std::string line = " ";
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += " " + r[c];
            if (c + 1 < r.size()) {
                line += std::string(width[c] - r[c].size() + 1, ' ');
            }
        }
        os << line << "\n";
    }
}

void tsv(std::ostringstream &os, const std::string &section, const Rows &rows) {
    for (const auto &r : rows) {
        os << section;
        for (const auto &cell : r) {
            os << "\t" << cell;
        }
        os << "\n";
    }
}

std::string basis_label(const SubsystemLayout &layout, std::size_t index) {
    std::string out = "|";
    for (std::size_t s = 0; s < layout.size(); ++s) {
        const std::size_t digit = (index / layout.stride(s)) % layout.subsystems()[s].dim;
        out += (s ? "," : "") + std::to_string(digit);
    }
    return out + ">";
}

Rows state_rows(const StateVector &state) {
    Rows rows;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = state.amplitudes()[i];
        if (std::abs(a) > 1e-12) {
            rows.push_back({basis_label(state.layout(), i), fixed(a.real(), 12), fixed(a.imag(), 12)});
        }
    }
    return rows;
}

std::string render_json(const RunReport &r, bool dump_states) {
    json doc;
    doc["scenario"] = r.scenario;
    doc["seed"] = r.seed;
    json layout = json::array();
    for (const auto &s : r.layout.subsystems()) {
        layout.push_back({{"label", s.label}, {"dim", s.dim}});
    }
    doc["layout"] = layout;
    json stages = json::array();
    for (const auto &s : r.stages) {
        json j{{"stage", s.stage}, {"object", s.object}, {"instrument", s.instrument}, {"kind", s.kind}};
        if (dump_states) {
            json amps = json::array();
            for (cplx a : s.state.amplitudes()) {
                amps.push_back({a.real(), a.imag()});
            }
            j["state"] = {{"layout", s.state.layout().labels()}, {"amplitudes", amps}};
        }
        stages.push_back(j);
    }
    doc["stages"] = stages;
    json tables = json::array();
    for (const auto &t : r.tables) {
        json rows = json::array();
        for (const auto &row : t.rows) {
            rows.push_back({{"k", row.index}, {"weight", row.weight}, {"component", row.summary}});
        }
        tables.push_back({{"title", t.title},
                          {"rows", rows},
                          {"dropped_weight", t.dropped_weight},
                          {"total", t.total()}});
    }
    doc["tables"] = tables;
    json conditions = json::array();
    for (const auto &c : r.conditions) {
        conditions.push_back({{"stage", c.stage},
                              {"condition", c.report.condition},
                              {"max_residual", c.report.max_residual},
                              {"samples", c.report.samples},
                              {"tolerance", c.report.tolerance},
                              {"pass", c.report.pass}});
    }
    doc["conditions"] = conditions;
    json metrics = json::object();
    for (const auto &m : r.metrics) {
        metrics[m.name] = m.value;
    }
    doc["metrics"] = metrics;
    doc["summary"] = {{"max_weight_sum_residual", r.max_weight_sum_residual},
                      {"max_condition_residual", r.max_condition_residual},
                      {"tolerance", r.check_tolerance},
                      {"pass", r.pass}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const RunReport &r, ReportFormat format, bool dump_states) {
    if (format == ReportFormat::Json) {
        return render_json(r, dump_states);
    }
    std::ostringstream os;
    const bool text = format == ReportFormat::Text;
    auto section = [&](const std::string &title, const std::string &tag, Rows rows) {
        if (text) {
            os << "\n" << title << "\n";
            aligned(os, rows);
        } else {
            tsv(os, tag, rows);
        }
    };
    Rows header{{"scenario", r.scenario}, {"seed", std::to_string(r.seed)},
                {"layout", r.layout.describe()}};
    if (text) {
        aligned(os, header);
    } else {
        tsv(os, "header", header);
    }
    Rows stages{{"stage", "object", "instrument", "kind"}};
    for (const auto &s : r.stages) {
        stages.push_back({std::to_string(s.stage), s.object, s.instrument, s.kind});
    }
    section("stages", "stage", stages);
    if (dump_states) {
        for (const auto &s : r.stages) {
            Rows rows{{"basis", "re", "im"}};
            const Rows amps = state_rows(s.state);
            rows.insert(rows.end(), amps.begin(), amps.end());
            section("state after stage " + std::to_string(s.stage),
                    "state\t" + std::to_string(s.stage), rows);
        }
    }
    for (const auto &t : r.tables) {
        Rows rows{{"k", "weight", "component"}};
        for (const auto &row : t.rows) {
            rows.push_back({std::to_string(row.index), fixed(row.weight, 12), row.summary});
        }
        rows.push_back({"dropped", fixed(t.dropped_weight, 12), ""});
        rows.push_back({"total", fixed(t.total(), 12), ""});
        section(t.title, "table\t" + t.title, rows);
    }
    if (!r.conditions.empty()) {
        Rows rows{{"stage", "condition", "max_residual", "samples", "tolerance", "pass"}};
        for (const auto &c : r.conditions) {
            rows.push_back({std::to_string(c.stage), c.report.condition,
                            sci(c.report.max_residual), std::to_string(c.report.samples),
                            sci(c.report.tolerance), c.report.pass ? "yes" : "no"});
        }
        section("conditions", "condition", rows);
    }
    if (!r.metrics.empty()) {
        Rows rows;
        for (const auto &m : r.metrics) {
            rows.push_back({m.name, sci(m.value)});
        }
        section("metrics", "metric", rows);
    }
    section("summary", "summary",
            {{"max_weight_sum_residual", sci(r.max_weight_sum_residual)},
             {"max_condition_residual", sci(r.max_condition_residual)},
             {"tolerance", sci(r.check_tolerance)},
             {"status", r.pass ? "PASS" : "FAIL"}});
    return os.str();
}

}  // namespace vnchain
