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

#include <functional>
#include <string>

#include "doctest.h"
#include "vnchain/error.hpp"
#include "vnchain/scenario.hpp"

using namespace vnchain;

namespace {

std::pair<ErrorCode, std::string> error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return {e.code(), e.message()};
    }
    FAIL("expected an error");
    return {ErrorCode::Validation, ""};
}

std::string replaced(std::string text, const std::string &from, const std::string &to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

const std::string &sg() { return builtin_document("stern-gerlach"); }

}  // namespace

TEST_CASE("stern-gerlach builtin parses into two stages on three qubits") {
    const Scenario s = parse_scenario(sg());
    CHECK(s.name == "stern-gerlach");
    CHECK(s.stages.size() == 2);
    CHECK(s.layout == SubsystemLayout{{"A", 2}, {"B", 2}, {"C", 2}});
    CHECK(s.stages[0].object == "A");
    CHECK(s.stages[1].object == "B");
    CHECK(s.stages[1].instrument == "C");
    REQUIRE(s.initial.size() == 1);
    CHECK(s.initial[0].state.preset == "plus");
}

TEST_CASE("every builtin is listed and parses") {
    const auto names = builtin_names();
    CHECK(names.size() == 4);
    for (const auto &n : {"stern-gerlach", "wigner-friend", "world-split", "ensemble-update"}) {
        CHECK(is_builtin(n));
        CHECK(parse_scenario(builtin_document(n)).name == n);
    }
    CHECK(!is_builtin("nope"));
}

TEST_CASE("emitted scenarios parse back to the same scenario") {
    for (const auto &n : builtin_names()) {
        const Scenario s = parse_scenario(builtin_document(n));
        const std::string text = emit_scenario(s);
        CHECK(parse_scenario(text) == s);
        CHECK(emit_scenario(parse_scenario(text)) == text);
    }
}

TEST_CASE("an empty stage list is rejected") {
    const std::string doc = replaced(
        replaced(sg(), "{\"object\": \"A\", \"instrument\": \"B\", \"measured\": {\"kind\": \"basis\"}, \"kind\": \"ideal\"},", ""),
        "{\"object\": \"B\", \"instrument\": \"C\", \"measured\": {\"kind\": \"basis\"}, \"kind\": \"ideal\"}", "");
    CHECK(error_of([&] { parse_scenario(doc); }).first == ErrorCode::Validation);
}

TEST_CASE("undeclared subsystems are unknown labels") {
    const auto [code, msg] = error_of([] {
        parse_scenario(replaced(sg(), "\"instrument\": \"C\"", "\"instrument\": \"D\""));
    });
    CHECK(code == ErrorCode::UnknownLabel);
    CHECK(msg.find("stages[1].instrument") != std::string::npos);
}

TEST_CASE("state specs are checked") {
    CHECK(error_of([] { parse_scenario(replaced(sg(), "\"A\": \"plus\"", "\"A\": \"plux\"")); }).first ==
          ErrorCode::MalformedState);
    CHECK(error_of([] { parse_scenario(replaced(sg(), "\"A\": \"plus\"", "\"A\": [[1,0],[1,0]]")); }).first ==
          ErrorCode::MalformedState);
    CHECK(error_of([] { parse_scenario(replaced(sg(), "\"A\": \"plus\"", "\"A\": [[1,0],[0,0],[0,0]]")); }).first ==
          ErrorCode::DimensionMismatch);
    CHECK(error_of([] { parse_state_spec("[0.5,"); }).first == ErrorCode::MalformedState);
    CHECK(parse_state_spec("basis:1").preset == "basis:1");
    CHECK(parse_state_spec("[0.6, 0.8]").amplitudes.size() == 2);
}

TEST_CASE("syntax errors report line and column") {
    const auto [code, msg] = error_of([] { parse_scenario(replaced(sg(), "\"plus\"}", "\"plus\",}")); });
    CHECK(code == ErrorCode::MalformedDocument);
    CHECK(msg.find("line 9, column") != std::string::npos);
}

TEST_CASE("unknown fields are named") {
    const auto [code, msg] = error_of([] { parse_scenario(replaced(sg(), "\"kind\": \"basis\"}", "\"kind\": \"basis\", \"extra\": 1}")); });
    CHECK(code == ErrorCode::MalformedDocument);
    CHECK(msg.find("stages[0].measured") != std::string::npos);
    CHECK(msg.find("extra") != std::string::npos);
}

TEST_CASE("stage ordering follows the chain") {
    // the second stage may not reuse an already prepared instrument
    CHECK(error_of([] { parse_scenario(replaced(sg(), "\"instrument\": \"C\"", "\"instrument\": \"A\"")); }).first ==
          ErrorCode::Validation);
}

TEST_CASE("initial overrides replace the preparation") {
    Scenario s = parse_scenario(sg());
    override_initial(s, "A", parse_state_spec("basis:1"));
    REQUIRE(s.initial.size() == 1);
    CHECK(s.initial[0].state.preset == "basis:1");
    CHECK(error_of([&] { override_initial(s, "D", parse_state_spec("plus")); }).first == ErrorCode::UnknownLabel);
}

TEST_CASE("materialized pieces have the declared shapes") {
    const Scenario s = parse_scenario(builtin_document("ensemble-update"));
    const Premeasurement pm = build_stage(s, 0);
    CHECK(pm.kind() == Premeasurement::Kind::Exact);
    CHECK(pm.object_dim() == 2);
    CHECK(pm.instrument_dim() == 3);
    CHECK(pointer_on(s, "B").subsystem() == "B");
    const Matrix x = materialize_matrix(MatrixSpec{"pauli_x", {}}, 2, "m");
    CHECK(x(0, 1) == cplx(1.0));
    CHECK(error_of([] { materialize_matrix(MatrixSpec{"pauli_x", {}}, 3, "m"); }).first ==
          ErrorCode::DimensionMismatch);
}
