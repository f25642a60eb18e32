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

#include "doctest.h"
#include "vnchain/error.hpp"
#include "vnchain/verify.hpp"

using namespace vnchain;

namespace {

VerifyOptions small(Corruption corrupt = Corruption::None) {
    VerifyOptions o = grid_up_to(3, 4);
    o.trials = 5;
    o.seed = 17;
    o.corrupt = corrupt;
    o.jobs = 2;
    return o;
}

}  // namespace

TEST_CASE("a small grid passes every suite") {
    const VerifyReport r = verify(small());
    CHECK(r.pass);
    CHECK(r.suites.size() == suite_names().size());
    for (const auto &s : r.suites) {
        CHECK_MESSAGE(s.pass(), s.name << ": " << s.first_failure);
        CHECK(s.cases > 0);
        CHECK(s.max_residual <= s.tolerance);
    }
    CHECK(r.warnings.empty());
}

TEST_CASE("phase corruption fails at least one suite") {
    const VerifyReport r = verify(small(Corruption::Phase));
    CHECK(!r.pass);
    std::size_t failed = 0;
    for (const auto &s : r.suites) {
        failed += s.pass() ? 0 : 1;
    }
    CHECK(failed >= 1);
}

TEST_CASE("zero trials warns about an empty suite and passes") {
    VerifyOptions o = small();
    o.trials = 0;
    const VerifyReport r = verify(o);
    CHECK(r.pass);
    CHECK(!r.warnings.empty());
}

TEST_CASE("results do not depend on the job count") {
    VerifyOptions a = small();
    a.jobs = 1;
    VerifyOptions b = small();
    b.jobs = 4;
    CHECK(render_verify(verify(a), ReportFormat::Tsv) == render_verify(verify(b), ReportFormat::Tsv));
}

TEST_CASE("grid and corruption names") {
    const VerifyOptions g = grid_up_to(4, 6);
    CHECK(g.object_dims == std::vector<std::size_t>{2, 3, 4});
    CHECK(g.instrument_dims == std::vector<std::size_t>{2, 3, 4, 5, 6});
    CHECK(parse_corruption("phase") == Corruption::Phase);
    CHECK(parse_corruption("none") == Corruption::None);
    bool threw = false;
    try {
        parse_corruption("bitflip");
    } catch (const Error &e) {
        threw = e.code() == ErrorCode::Validation;
    }
    CHECK(threw);
}
