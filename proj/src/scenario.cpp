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

#include "vnchain/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "vnchain/error.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

using json = nlohmann::ordered_json;

namespace {

constexpr double kAmplitudeNormTolerance = 1e-8;

[[noreturn]] void fail_at(ErrorCode code, const std::string &where, const std::string &what) {
    fail(code, where.empty() ? what : where + ": " + what);
}

// nlohmann messages repeat the exception id and position; keep the reason only.
std::string json_reason(const std::exception &e) {
    const std::string what = e.what();
    const auto pos = what.find(": ");
    return pos == std::string::npos ? what : what.substr(pos + 2);
}

template <typename F>
auto at(const std::string &where, F &&body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error &e) {
        fail_at(e.code(), where, e.message());
    }
}

std::vector<Label> split_labels(const std::string &text) {
    std::vector<Label> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        out.push_back(part);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string join_labels(const std::vector<Label> &labels) {
    std::string out;
    for (const auto &l : labels) {
        out += (out.empty() ? "" : ",") + l;
    }
    return out;
}

// ---- reading ----

void check_keys(const json &obj, const std::string &where, std::initializer_list<const char *> keys) {
    if (!obj.is_object()) {
        fail_at(ErrorCode::MalformedDocument, where, "expected an object");
    }
    for (const auto &item : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(),
                         [&](const char *k) { return item.key() == k; })) {
            fail_at(ErrorCode::MalformedDocument, where, "unknown field '" + item.key() + "'");
        }
    }
}

const json &require(const json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) {
        fail_at(ErrorCode::MalformedDocument, where, std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

std::string read_string(const json &v, const std::string &where) {
    if (!v.is_string()) {
        fail_at(ErrorCode::MalformedDocument, where, "expected a string");
    }
    return v.get<std::string>();
}

std::uint64_t read_count(const json &v, const std::string &where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail_at(ErrorCode::MalformedDocument, where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

double read_number(const json &v, const std::string &where) {
    if (!v.is_number()) {
        fail_at(ErrorCode::MalformedDocument, where, "expected a number");
    }
    return v.get<double>();
}

bool read_complex(const json &v, cplx &out) {
    if (v.is_number()) {
        out = {v.get<double>(), 0.0};
        return true;
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out = {v[0].get<double>(), v[1].get<double>()};
        return true;
    }
    return false;
}

StateSpec read_state(const json &v, const std::string &where) {
    StateSpec spec;
    if (v.is_string()) {
        spec.preset = v.get<std::string>();
        if (spec.preset.empty()) {
            fail_at(ErrorCode::MalformedState, where, "empty state preset");
        }
        return spec;
    }
    if (!v.is_array() || v.empty()) {
        fail_at(ErrorCode::MalformedState, where,
                "a state is a preset name or a non-empty amplitude list");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        cplx c;
        if (!read_complex(v[i], c)) {
            fail_at(ErrorCode::MalformedState, where + "[" + std::to_string(i) + "]",
                    "amplitude must be a number or an [re, im] pair");
        }
        spec.amplitudes.push_back(c);
    }
    return spec;
}

MatrixSpec read_matrix(const json &v, const std::string &where) {
    MatrixSpec spec;
    if (v.is_string()) {
        spec.name = v.get<std::string>();
        return spec;
    }
    if (!v.is_array() || v.empty()) {
        fail_at(ErrorCode::MalformedDocument, where, "a matrix is a name or a list of rows");
    }
    const std::size_t n = v.size();
    std::vector<cplx> data;
    for (std::size_t r = 0; r < n; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!v[r].is_array() || v[r].size() != n) {
            fail_at(ErrorCode::DimensionMismatch, row_where,
                    "matrix must be square with " + std::to_string(n) + " columns");
        }
        for (std::size_t c = 0; c < n; ++c) {
            cplx z;
            if (!read_complex(v[r][c], z)) {
                fail_at(ErrorCode::MalformedDocument, row_where + "[" + std::to_string(c) + "]",
                        "entry must be a number or an [re, im] pair");
            }
            data.push_back(z);
        }
    }
    spec.value = Matrix(n, n, std::move(data));
    return spec;
}

ObservableSpec read_observable(const json &v, const std::string &where) {
    check_keys(v, where, {"kind", "matrix", "eigenvalues", "projectors"});
    ObservableSpec spec;
    spec.kind = read_string(require(v, "kind", where), where + ".kind");
    if (spec.kind == "basis") {
        if (v.size() != 1) {
            fail_at(ErrorCode::MalformedDocument, where, "basis observable takes no parameters");
        }
    } else if (spec.kind == "matrix") {
        spec.matrix = read_matrix(require(v, "matrix", where), where + ".matrix");
    } else if (spec.kind == "projectors") {
        const json &ps = require(v, "projectors", where);
        if (!ps.is_array() || ps.empty()) {
            fail_at(ErrorCode::MalformedDocument, where + ".projectors", "expected a list");
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            spec.projectors.push_back(
                read_matrix(ps[i], where + ".projectors[" + std::to_string(i) + "]"));
        }
        if (v.contains("eigenvalues")) {
            const json &ev = v.at("eigenvalues");
            if (!ev.is_array()) {
                fail_at(ErrorCode::MalformedDocument, where + ".eigenvalues", "expected a list");
            }
            for (std::size_t i = 0; i < ev.size(); ++i) {
                spec.eigenvalues.push_back(
                    read_number(ev[i], where + ".eigenvalues[" + std::to_string(i) + "]"));
            }
        }
    } else {
        fail_at(ErrorCode::MalformedDocument, where + ".kind",
                "unknown observable kind '" + spec.kind + "'");
    }
    return spec;
}

StageSpec read_stage(const json &v, const std::string &where) {
    check_keys(v, where,
               {"object", "instrument", "measured", "pointer", "pointer_states", "ready", "kind",
                "dressings", "dressing_seed"});
    StageSpec s;
    s.object = read_string(require(v, "object", where), where + ".object");
    s.instrument = read_string(require(v, "instrument", where), where + ".instrument");
    s.measured = v.contains("measured") ? read_observable(v.at("measured"), where + ".measured")
                                        : ObservableSpec{};
    if (v.contains("pointer")) {
        s.pointer = read_observable(v.at("pointer"), where + ".pointer");
    }
    if (v.contains("pointer_states")) {
        const json &ps = v.at("pointer_states");
        if (!ps.is_array()) {
            fail_at(ErrorCode::MalformedDocument, where + ".pointer_states", "expected a list");
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            s.pointer_states.push_back(
                read_state(ps[i], where + ".pointer_states[" + std::to_string(i) + "]"));
        }
    }
    if (v.contains("ready")) {
        s.ready = read_state(v.at("ready"), where + ".ready");
    }
    if (v.contains("kind")) {
        s.kind = read_string(v.at("kind"), where + ".kind");
    }
    if (v.contains("dressings")) {
        const json &ds = v.at("dressings");
        if (!ds.is_array()) {
            fail_at(ErrorCode::MalformedDocument, where + ".dressings", "expected a list");
        }
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const std::string w = where + ".dressings[" + std::to_string(i) + "]";
            check_keys(ds[i], w, {"object", "instrument"});
            s.dressings.push_back({read_matrix(require(ds[i], "object", w), w + ".object"),
                                   read_matrix(require(ds[i], "instrument", w), w + ".instrument")});
        }
    }
    if (v.contains("dressing_seed")) {
        s.dressing_seed = read_count(v.at("dressing_seed"), where + ".dressing_seed");
    }
    return s;
}

AnalysisSpec read_analysis(const json &v, const std::string &where) {
    AnalysisSpec a;
    if (v.is_string()) {
        a.type = v.get<std::string>();
        return a;
    }
    check_keys(v, where,
               {"type", "subsystem", "blocks", "pointer", "trials", "members", "event",
                "monte_carlo"});
    a.type = read_string(require(v, "type", where), where + ".type");
    if (v.contains("subsystem")) {
        a.subsystem = read_string(v.at("subsystem"), where + ".subsystem");
    }
    if (v.contains("blocks")) {
        a.blocks = read_string(v.at("blocks"), where + ".blocks");
    }
    if (v.contains("pointer")) {
        a.pointer = read_string(v.at("pointer"), where + ".pointer");
    }
    if (v.contains("trials")) {
        a.trials = read_count(v.at("trials"), where + ".trials");
    }
    if (v.contains("members")) {
        const json &ms = v.at("members");
        if (!ms.is_array()) {
            fail_at(ErrorCode::MalformedDocument, where + ".members", "expected a list");
        }
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string w = where + ".members[" + std::to_string(i) + "]";
            check_keys(ms[i], w, {"weight", "state"});
            a.members.push_back({read_number(require(ms[i], "weight", w), w + ".weight"),
                                 read_state(require(ms[i], "state", w), w + ".state")});
        }
    }
    if (v.contains("event")) {
        const json &ev = v.at("event");
        const std::string w = where + ".event";
        check_keys(ev, w, {"stage", "pointer_branch", "subsystem", "projector"});
        if (ev.contains("stage")) {
            a.event_stage = read_count(ev.at("stage"), w + ".stage");
            a.event_branch = read_count(require(ev, "pointer_branch", w), w + ".pointer_branch");
        } else {
            a.subsystem = read_string(require(ev, "subsystem", w), w + ".subsystem");
            a.event_projector = read_matrix(require(ev, "projector", w), w + ".projector");
        }
    }
    if (v.contains("monte_carlo")) {
        const std::string w = where + ".monte_carlo";
        check_keys(v.at("monte_carlo"), w, {"samples"});
        a.monte_carlo_samples = read_count(require(v.at("monte_carlo"), "samples", w), w + ".samples");
    }
    return a;
}

// ---- writing ----

json write_complex(cplx c) { return json::array({c.real(), c.imag()}); }

json write_state(const StateSpec &s) {
    if (!s.preset.empty()) {
        return s.preset;
    }
    json out = json::array();
    for (cplx c : s.amplitudes) {
        out.push_back(write_complex(c));
    }
    return out;
}

json write_matrix(const MatrixSpec &m) {
    if (!m.name.empty()) {
        return m.name;
    }
    json out = json::array();
    for (std::size_t r = 0; r < m.value.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.value.cols(); ++c) {
            row.push_back(write_complex(m.value(r, c)));
        }
        out.push_back(row);
    }
    return out;
}

json write_observable(const ObservableSpec &o) {
    json out;
    out["kind"] = o.kind;
    if (o.kind == "matrix") {
        out["matrix"] = write_matrix(o.matrix);
    } else if (o.kind == "projectors") {
        if (!o.eigenvalues.empty()) {
            out["eigenvalues"] = o.eigenvalues;
        }
        json ps = json::array();
        for (const auto &p : o.projectors) {
            ps.push_back(write_matrix(p));
        }
        out["projectors"] = ps;
    }
    return out;
}

// ---- materializing ----

const std::map<std::string, Matrix> &named_qubit_matrices() {
    static const std::map<std::string, Matrix> table = [] {
        const double h = 1.0 / std::sqrt(2.0);
        const cplx i{0.0, 1.0};
        return std::map<std::string, Matrix>{
            {"pauli_x", Matrix{{0.0, 1.0}, {1.0, 0.0}}},
            {"pauli_y", Matrix{{0.0, -i}, {i, 0.0}}},
            {"pauli_z", Matrix{{1.0, 0.0}, {0.0, -1.0}}},
            {"hadamard", Matrix{{h, h}, {h, -h}}},
        };
    }();
    return table;
}

}  // namespace

Matrix materialize_matrix(const MatrixSpec &spec, std::size_t dim, const std::string &where) {
    if (spec.name.empty()) {
        if (spec.value.rows() != dim || spec.value.cols() != dim) {
            fail_at(ErrorCode::DimensionMismatch, where,
                    "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
        }
        return spec.value;
    }
    if (spec.name == "identity") {
        return Matrix::identity(dim);
    }
    const auto &table = named_qubit_matrices();
    const auto it = table.find(spec.name);
    if (it == table.end()) {
        fail_at(ErrorCode::Validation, where, "unknown matrix '" + spec.name + "'");
    }
    if (dim != 2) {
        fail_at(ErrorCode::DimensionMismatch, where,
                "'" + spec.name + "' needs dimension 2, got " + std::to_string(dim));
    }
    return it->second;
}

StateVector materialize_state(const StateSpec &spec, const SubsystemLayout &layout,
                              const std::string &where, const Tolerances &tol) {
    const std::size_t d = layout.total_dim();
    if (spec.preset.empty()) {
        if (spec.amplitudes.size() != d) {
            fail_at(ErrorCode::DimensionMismatch, where,
                    std::to_string(spec.amplitudes.size()) + " amplitudes for dimension " +
                        std::to_string(d));
        }
        const double n = norm(spec.amplitudes);
        if (std::abs(n - 1.0) > kAmplitudeNormTolerance) {
            fail_at(ErrorCode::MalformedState, where,
                    "amplitudes have norm " + std::to_string(n) + ", expected 1");
        }
        return {layout, normalized(spec.amplitudes), tol};
    }
    const std::string &p = spec.preset;
    Vector amps(d);
    if (p == "plus" || p == "minus") {
        const double s = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t i = 0; i < d; ++i) {
            amps[i] = (p == "minus" && i % 2 == 1) ? -s : s;
        }
    } else if (p.rfind("basis:", 0) == 0) {
        const std::string digits = p.substr(6);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            fail_at(ErrorCode::MalformedState, where, "bad basis preset '" + p + "'");
        }
        const std::size_t k = std::stoul(digits);
        if (k >= d) {
            fail_at(ErrorCode::DimensionMismatch, where,
                    "basis index " + digits + " outside dimension " + std::to_string(d));
        }
        amps[k] = 1.0;
    } else if (p == "bell") {
        const auto &subs = layout.subsystems();
        if (subs.size() != 2 || subs[0].dim != subs[1].dim) {
            fail_at(ErrorCode::DimensionMismatch, where,
                    "bell needs two subsystems of equal dimension, got " + layout.describe());
        }
        const std::size_t m = subs[0].dim;
        for (std::size_t i = 0; i < m; ++i) {
            amps[i * m + i] = 1.0 / std::sqrt(static_cast<double>(m));
        }
    } else {
        fail_at(ErrorCode::MalformedState, where, "unknown state preset '" + p + "'");
    }
    return {layout, std::move(amps), tol};
}

SpectralObservable materialize_observable(const ObservableSpec &spec, const Label &subsystem,
                                          std::size_t dim, const std::string &where,
                                          const Tolerances &tol) {
    return at(where, [&]() -> SpectralObservable {
        if (spec.kind == "basis") {
            return SpectralObservable::computational(subsystem, dim);
        }
        if (spec.kind == "matrix") {
            const Matrix h = materialize_matrix(spec.matrix, dim, "matrix");
            if (hermiticity_residual(h) > tol.herm) {
                fail(ErrorCode::NotHermitian, "observable matrix is not Hermitian");
            }
            return observable_from_matrix(subsystem, h, tol.eig_merge, tol);
        }
        if (spec.kind == "projectors") {
            std::vector<Matrix> ps;
            for (std::size_t i = 0; i < spec.projectors.size(); ++i) {
                ps.push_back(materialize_matrix(spec.projectors[i], dim,
                                                "projectors[" + std::to_string(i) + "]"));
            }
            std::vector<double> ev = spec.eigenvalues;
            if (ev.empty()) {
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    ev.push_back(static_cast<double>(i));
                }
            }
            if (ev.size() != ps.size()) {
                fail(ErrorCode::Validation, "need one eigenvalue per projector");
            }
            return SpectralObservable(subsystem, ev, ps, tol);
        }
        fail(ErrorCode::MalformedDocument, "unknown observable kind '" + spec.kind + "'");
    });
}

Premeasurement build_stage(const Scenario &scenario, std::size_t stage, const Tolerances &tol) {
    const StageSpec &s = scenario.stages.at(stage);
    const std::string where = "stages[" + std::to_string(stage) + "]";
    return at(where, [&]() -> Premeasurement {
        const std::size_t dim_a = scenario.layout.dim(s.object);
        const std::size_t dim_b = scenario.layout.dim(s.instrument);
        const SubsystemLayout instrument{{s.instrument, dim_b}};
        const SpectralObservable measured =
            materialize_observable(s.measured, s.object, dim_a, "measured", tol);
        const std::size_t k = measured.size();
        std::vector<Vector> pointer_vectors;
        if (s.pointer_states.empty()) {
            if (k > dim_b) {
                fail(ErrorCode::InsufficientInstrument,
                     std::to_string(k) + " outcomes need at least " + std::to_string(k) +
                         " instrument dimensions, '" + s.instrument + "' has " +
                         std::to_string(dim_b));
            }
            for (std::size_t j = 0; j < k; ++j) {
                pointer_vectors.push_back(basis_vector(dim_b, j));
            }
        } else {
            for (std::size_t j = 0; j < s.pointer_states.size(); ++j) {
                pointer_vectors.push_back(
                    materialize_state(s.pointer_states[j], instrument,
                                      "pointer_states[" + std::to_string(j) + "]", tol)
                        .amplitudes());
            }
        }
        const SubsystemBasis basis =
            at("pointer_states", [&] { return SubsystemBasis(s.instrument, dim_b, pointer_vectors, tol); });
        const StateVector ready = s.ready ? materialize_state(*s.ready, instrument, "ready", tol)
                                          : StateVector::basis(instrument, 0);
        IdealOptions options;
        if (s.pointer) {
            options.pointer = materialize_observable(*s.pointer, s.instrument, dim_b, "pointer", tol);
        }
        Premeasurement pm = build_ideal(measured, basis, ready, options, tol);
        if (s.kind == "ideal") {
            if (!s.dressings.empty() || s.dressing_seed) {
                fail(ErrorCode::Validation, "dressings are only allowed on exact stages");
            }
            return pm;
        }
        if (s.kind != "exact") {
            fail(ErrorCode::Validation, "kind must be 'ideal' or 'exact', got '" + s.kind + "'");
        }
        std::vector<Dressing> dressings;
        if (s.dressing_seed) {
            if (!s.dressings.empty()) {
                fail(ErrorCode::Validation, "give either dressings or dressing_seed, not both");
            }
            Rng rng(*s.dressing_seed);
            dressings = random_dressings(pm, rng);
        } else if (s.dressings.empty()) {
            fail(ErrorCode::Validation, "exact stage needs dressings or a dressing_seed");
        } else {
            for (std::size_t j = 0; j < s.dressings.size(); ++j) {
                const std::string w = "dressings[" + std::to_string(j) + "]";
                dressings.push_back({materialize_matrix(s.dressings[j].object, dim_a, w + ".object"),
                                     materialize_matrix(s.dressings[j].instrument, dim_b,
                                                        w + ".instrument")});
            }
        }
        return build_exact(pm, dressings, tol);
    });
}

SpectralObservable pointer_on(const Scenario &scenario, const Label &label, const Tolerances &tol) {
    for (std::size_t t = 0; t < scenario.stages.size(); ++t) {
        if (scenario.stages[t].instrument == label) {
            return build_stage(scenario, t, tol).pointer();
        }
    }
    return SpectralObservable::computational(label, scenario.layout.dim(label));
}

void validate_scenario(const Scenario &scenario, const Tolerances &tol) {
    if (scenario.layout.empty()) {
        fail(ErrorCode::Validation, "subsystems: at least one subsystem is required");
    }
    auto known = [&](const Label &label, const std::string &where) {
        if (!scenario.layout.contains(label)) {
            fail_at(ErrorCode::UnknownLabel, where,
                    "undeclared subsystem '" + label + "' (declared: " +
                        scenario.layout.describe() + ")");
        }
    };
    std::set<Label> prepared;
    for (std::size_t i = 0; i < scenario.initial.size(); ++i) {
        const InitialSpec &init = scenario.initial[i];
        const std::string where = "initial." + join_labels(init.labels);
        for (const auto &l : init.labels) {
            known(l, where);
            if (!prepared.insert(l).second) {
                fail_at(ErrorCode::Validation, where, "subsystem '" + l + "' prepared twice");
            }
        }
        at(where, [&] { return scenario.layout.select(init.labels); });
        materialize_state(init.state, scenario.layout.select(init.labels), where, tol);
    }
    if (scenario.stages.empty()) {
        fail(ErrorCode::Validation, "stages: at least one stage is required");
    }
    for (std::size_t t = 0; t < scenario.stages.size(); ++t) {
        const StageSpec &s = scenario.stages[t];
        const std::string where = "stages[" + std::to_string(t) + "]";
        known(s.object, where + ".object");
        known(s.instrument, where + ".instrument");
        if (s.object == s.instrument) {
            fail_at(ErrorCode::Validation, where, "object and instrument must differ");
        }
        if (!prepared.count(s.object)) {
            fail_at(ErrorCode::Validation, where + ".object",
                    "'" + s.object + "' is neither initial nor an earlier instrument");
        }
        if (!prepared.insert(s.instrument).second) {
            fail_at(ErrorCode::Validation, where + ".instrument",
                    "'" + s.instrument + "' is already prepared; instruments enter in their ready state");
        }
        build_stage(scenario, t, tol);
    }
    for (const auto &sub : scenario.layout.subsystems()) {
        if (!prepared.count(sub.label)) {
            fail(ErrorCode::Validation, "subsystem '" + sub.label + "' is never prepared");
        }
    }
    for (std::size_t i = 0; i < scenario.analyses.size(); ++i) {
        const AnalysisSpec &a = scenario.analyses[i];
        const std::string where = "analyses[" + std::to_string(i) + "]";
        if (a.subsystem) {
            known(*a.subsystem, where + ".subsystem");
        }
        if (a.blocks) {
            known(*a.blocks, where + ".blocks");
        }
        if (a.pointer) {
            known(*a.pointer, where + ".pointer");
        }
        if (a.type == "branches" || a.type == "condition_reports") {
            if (a.trials && *a.trials == 0) {
                fail_at(ErrorCode::Validation, where + ".trials", "must be positive");
            }
        } else if (a.type == "improper_mixture") {
            if (!a.subsystem) {
                fail_at(ErrorCode::MalformedDocument, where, "missing field 'subsystem'");
            }
            if (scenario.layout.size() < 2) {
                fail_at(ErrorCode::Validation, where, "needs at least two subsystems");
            }
        } else if (a.type == "world_branches") {
            if (!a.pointer) {
                fail_at(ErrorCode::MalformedDocument, where, "missing field 'pointer'");
            }
        } else if (a.type == "ensemble_update") {
            if (a.members.empty()) {
                fail_at(ErrorCode::InvalidEnsemble, where + ".members", "ensemble has no members");
            }
            const Label &object = scenario.stages.front().object;
            const bool own_factor = std::any_of(
                scenario.initial.begin(), scenario.initial.end(), [&](const InitialSpec &s) {
                    return s.labels.size() == 1 && s.labels.front() == object;
                });
            if (!own_factor) {
                fail_at(ErrorCode::Validation, where,
                        "members replace the state of '" + object +
                            "', which must be prepared on its own");
            }
            double total = 0.0;
            for (std::size_t m = 0; m < a.members.size(); ++m) {
                const std::string w = where + ".members[" + std::to_string(m) + "]";
                if (!(a.members[m].weight > 0.0)) {
                    fail_at(ErrorCode::InvalidEnsemble, w + ".weight", "must be positive");
                }
                total += a.members[m].weight;
                materialize_state(a.members[m].state,
                                  SubsystemLayout{{object, scenario.layout.dim(object)}},
                                  w + ".state", tol);
            }
            if (std::abs(total - 1.0) > tol.norm) {
                fail_at(ErrorCode::InvalidEnsemble, where + ".members",
                        "weights sum to " + std::to_string(total));
            }
            if (a.event_stage) {
                if (*a.event_stage >= scenario.stages.size()) {
                    fail_at(ErrorCode::Validation, where + ".event.stage", "no such stage");
                }
                const std::size_t branches = build_stage(scenario, *a.event_stage, tol).pointer().size();
                if (!a.event_branch || *a.event_branch >= branches) {
                    fail_at(ErrorCode::Validation, where + ".event.pointer_branch",
                            "no such pointer branch");
                }
            } else if (a.event_projector && a.subsystem) {
                const Matrix p = materialize_matrix(*a.event_projector,
                                                    scenario.layout.dim(*a.subsystem),
                                                    where + ".event.projector");
                if (projector_residual(p) > tol.projector) {
                    fail_at(ErrorCode::NotProjector, where + ".event.projector",
                            "not an orthogonal projector");
                }
            } else {
                fail_at(ErrorCode::MalformedDocument, where, "missing field 'event'");
            }
        } else {
            fail_at(ErrorCode::Validation, where + ".type", "unknown analysis '" + a.type + "'");
        }
    }
}

Scenario parse_scenario(std::string_view text, const Tolerances &tol) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        fail(ErrorCode::MalformedDocument, "line " + std::to_string(line) + ", column " +
                                               std::to_string(column) + ": " + json_reason(e));
    }
    check_keys(doc, "", {"name", "description", "subsystems", "initial", "stages", "analyses"});
    Scenario s;
    s.name = read_string(require(doc, "name", ""), "name");
    if (doc.contains("description")) {
        s.description = read_string(doc.at("description"), "description");
    }
    const json &subs = require(doc, "subsystems", "");
    if (!subs.is_array()) {
        fail(ErrorCode::MalformedDocument, "subsystems: expected a list");
    }
    std::vector<Subsystem> list;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string w = "subsystems[" + std::to_string(i) + "]";
        check_keys(subs[i], w, {"label", "dim"});
        list.push_back({read_string(require(subs[i], "label", w), w + ".label"),
                        static_cast<std::size_t>(read_count(require(subs[i], "dim", w), w + ".dim"))});
    }
    s.layout = at("subsystems", [&] { return SubsystemLayout(list); });
    if (doc.contains("initial")) {
        const json &init = doc.at("initial");
        if (!init.is_object()) {
            fail(ErrorCode::MalformedDocument, "initial: expected an object");
        }
        for (const auto &item : init.items()) {
            s.initial.push_back(
                {split_labels(item.key()), read_state(item.value(), "initial." + item.key())});
        }
    }
    const json &stages = require(doc, "stages", "");
    if (!stages.is_array()) {
        fail(ErrorCode::MalformedDocument, "stages: expected a list");
    }
    for (std::size_t t = 0; t < stages.size(); ++t) {
        s.stages.push_back(read_stage(stages[t], "stages[" + std::to_string(t) + "]"));
    }
    if (doc.contains("analyses")) {
        const json &an = doc.at("analyses");
        if (!an.is_array()) {
            fail(ErrorCode::MalformedDocument, "analyses: expected a list");
        }
        for (std::size_t i = 0; i < an.size(); ++i) {
            s.analyses.push_back(read_analysis(an[i], "analyses[" + std::to_string(i) + "]"));
        }
    }
    validate_scenario(s, tol);
    return s;
}

std::string emit_scenario(const Scenario &s) {
    json doc;
    doc["name"] = s.name;
    if (!s.description.empty()) {
        doc["description"] = s.description;
    }
    json subs = json::array();
    for (const auto &sub : s.layout.subsystems()) {
        subs.push_back({{"label", sub.label}, {"dim", sub.dim}});
    }
    doc["subsystems"] = subs;
    json init = json::object();
    for (const auto &i : s.initial) {
        init[join_labels(i.labels)] = write_state(i.state);
    }
    doc["initial"] = init;
    json stages = json::array();
    for (const auto &st : s.stages) {
        json j;
        j["object"] = st.object;
        j["instrument"] = st.instrument;
        j["measured"] = write_observable(st.measured);
        if (st.pointer) {
            j["pointer"] = write_observable(*st.pointer);
        }
        if (!st.pointer_states.empty()) {
            json ps = json::array();
            for (const auto &p : st.pointer_states) {
                ps.push_back(write_state(p));
            }
            j["pointer_states"] = ps;
        }
        if (st.ready) {
            j["ready"] = write_state(*st.ready);
        }
        j["kind"] = st.kind;
        if (!st.dressings.empty()) {
            json ds = json::array();
            for (const auto &d : st.dressings) {
                ds.push_back({{"object", write_matrix(d.object)},
                              {"instrument", write_matrix(d.instrument)}});
            }
            j["dressings"] = ds;
        }
        if (st.dressing_seed) {
            j["dressing_seed"] = *st.dressing_seed;
        }
        stages.push_back(j);
    }
    doc["stages"] = stages;
    json analyses = json::array();
    for (const auto &a : s.analyses) {
        json j;
        j["type"] = a.type;
        if (a.subsystem && !a.event_projector) {
            j["subsystem"] = *a.subsystem;
        }
        if (a.blocks) {
            j["blocks"] = *a.blocks;
        }
        if (a.pointer) {
            j["pointer"] = *a.pointer;
        }
        if (a.trials) {
            j["trials"] = *a.trials;
        }
        if (!a.members.empty()) {
            json ms = json::array();
            for (const auto &m : a.members) {
                ms.push_back({{"weight", m.weight}, {"state", write_state(m.state)}});
            }
            j["members"] = ms;
        }
        if (a.event_stage) {
            j["event"] = {{"stage", *a.event_stage}, {"pointer_branch", a.event_branch.value_or(0)}};
        } else if (a.event_projector) {
            j["event"] = {{"subsystem", a.subsystem.value_or("")},
                          {"projector", write_matrix(*a.event_projector)}};
        }
        if (a.monte_carlo_samples > 0) {
            j["monte_carlo"] = {{"samples", a.monte_carlo_samples}};
        }
        analyses.push_back(j);
    }
    doc["analyses"] = analyses;
    return doc.dump(2) + "\n";
}

StateSpec parse_state_spec(std::string_view text) {
    std::string t(text);
    t.erase(0, t.find_first_not_of(" \t\n"));
    t.erase(t.find_last_not_of(" \t\n") + 1);
    if (!t.empty() && t.front() == '[') {
        json v;
        try {
            v = json::parse(t);
        } catch (const json::parse_error &e) {
            fail(ErrorCode::MalformedState, "state '" + t + "': " + json_reason(e));
        }
        return read_state(v, "state");
    }
    return read_state(json(t), "state");
}

void override_initial(Scenario &scenario, const std::string &labels, const StateSpec &state,
                      const Tolerances &tol) {
    const std::vector<Label> split = split_labels(labels);
    bool replaced = false;
    for (auto &init : scenario.initial) {
        if (init.labels == split) {
            init.state = state;
            replaced = true;
        }
    }
    if (!replaced) {
        for (const auto &l : split) {
            if (!scenario.layout.contains(l)) {
                fail(ErrorCode::UnknownLabel, "initial." + labels + ": undeclared subsystem '" +
                                                  l + "'");
            }
        }
        fail(ErrorCode::Validation,
             "initial." + labels + ": the scenario prepares no factor with exactly these labels");
    }
    validate_scenario(scenario, tol);
}

namespace {

const std::vector<std::pair<std::string, std::string>> &builtins() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"stern-gerlach", R"({
  "name": "stern-gerlach",
  "description": "A spin-1/2 (A) steers the beam position (B), which a screen (C) records. Branch 0 is spin up.",
  "subsystems": [
    {"label": "A", "dim": 2},
    {"label": "B", "dim": 2},
    {"label": "C", "dim": 2}
  ],
  "initial": {"A": "plus"},
  "stages": [
    {"object": "A", "instrument": "B", "measured": {"kind": "basis"}, "kind": "ideal"},
    {"object": "B", "instrument": "C", "measured": {"kind": "basis"}, "kind": "ideal"}
  ],
  "analyses": ["branches", {"type": "condition_reports", "trials": 20}]
}
)"},
        {"wigner-friend", R"({
  "name": "wigner-friend",
  "description": "Two-link chain: the friend (B) measures the spin (A), then Wigner (C) measures the friend.",
  "subsystems": [
    {"label": "A", "dim": 2},
    {"label": "B", "dim": 2},
    {"label": "C", "dim": 2}
  ],
  "initial": {"A": "plus"},
  "stages": [
    {"object": "A", "instrument": "B", "measured": {"kind": "basis"}, "kind": "ideal"},
    {"object": "B", "instrument": "C", "measured": {"kind": "basis"}, "kind": "ideal"}
  ],
  "analyses": [
    "branches",
    {"type": "improper_mixture", "subsystem": "C", "blocks": "B"},
    {"type": "condition_reports", "trials": 20}
  ]
}
)"},
        {"world-split", R"({
  "name": "world-split",
  "description": "B1 measures A and B2 copies B1; the A+B2 world differs between the B1 branches.",
  "subsystems": [
    {"label": "A", "dim": 2},
    {"label": "B1", "dim": 2},
    {"label": "B2", "dim": 2}
  ],
  "initial": {"A": [[0.6, 0.0], [0.0, 0.8]]},
  "stages": [
    {"object": "A", "instrument": "B1", "measured": {"kind": "basis"}, "kind": "ideal"},
    {"object": "B1", "instrument": "B2", "measured": {"kind": "basis"}, "kind": "ideal"}
  ],
  "analyses": ["branches", {"type": "world_branches", "pointer": "B1"}]
}
)"},
        {"ensemble-update", R"({
  "name": "ensemble-update",
  "description": "A proper ensemble of spin states is premeasured by a dressed instrument; the weights are updated on pointer position 0.",
  "subsystems": [
    {"label": "A", "dim": 2},
    {"label": "B", "dim": 3}
  ],
  "initial": {"A": "plus"},
  "stages": [
    {"object": "A", "instrument": "B", "measured": {"kind": "matrix", "matrix": "pauli_z"},
     "kind": "exact", "dressing_seed": 7}
  ],
  "analyses": [
    {"type": "ensemble_update",
     "members": [
       {"weight": 0.25, "state": "plus"},
       {"weight": 0.75, "state": [[0.6, 0.0], [0.8, 0.0]]}
     ],
     "event": {"stage": 0, "pointer_branch": 0},
     "monte_carlo": {"samples": 100000}},
    {"type": "condition_reports", "trials": 20}
  ]
}
)"},
    };
    return table;
}

}  // namespace

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto &b : builtins()) {
        out.push_back(b.first);
    }
    return out;
}

bool is_builtin(const std::string &name) {
    const auto &t = builtins();
    return std::any_of(t.begin(), t.end(), [&](const auto &b) { return b.first == name; });
}

const std::string &builtin_document(const std::string &name) {
    for (const auto &b : builtins()) {
        if (b.first == name) {
            return b.second;
        }
    }
    fail(ErrorCode::Validation, "no builtin scenario named '" + name + "'");
}

}  // namespace vnchain
