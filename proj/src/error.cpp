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

#include "vnchain/error.hpp"

namespace vnchain {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LayoutConflict: return "layout-conflict";
        case ErrorCode::DegenerateLayout: return "degenerate-layout";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::UnknownLabel: return "unknown-label";
        case ErrorCode::NotNormalized: return "not-normalized";
        case ErrorCode::NotOrthonormal: return "not-orthonormal";
        case ErrorCode::NotHermitian: return "not-hermitian";
        case ErrorCode::NotPositive: return "not-positive";
        case ErrorCode::NotProjector: return "not-projector";
        case ErrorCode::NotUnitary: return "not-unitary";
        case ErrorCode::InvalidDecomposition: return "invalid-decomposition";
        case ErrorCode::InsufficientInstrument: return "insufficient-instrument";
        case ErrorCode::PointerOutsideRange: return "pointer-outside-range";
        case ErrorCode::DressingLeak: return "dressing-leak";
        case ErrorCode::ObservableMismatch: return "observable-mismatch";
        case ErrorCode::UndefinedConditional: return "undefined-conditional";
        case ErrorCode::VanishingOverlap: return "vanishing-overlap";
        case ErrorCode::InvalidEnsemble: return "invalid-ensemble";
        case ErrorCode::ZeroAccepted: return "zero-accepted";
        case ErrorCode::MalformedState: return "malformed-state";
        case ErrorCode::MalformedDocument: return "malformed-document";
        case ErrorCode::Validation: return "validation";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code),
      message_(message) {}

void fail(ErrorCode code, const std::string &message) { throw Error(code, message); }

}  // namespace vnchain
