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

#include <atomic>
#include <cstdlib>
#include <string>

#include "vnchain/kernels.hpp"

namespace vnchain::kernels {

namespace {

const KernelTable kScalar{Backend::Scalar, scalar::dotc, scalar::dotu, scalar::axpy, scalar::norm2};
const KernelTable kAvx2{Backend::Avx2, avx2::dotc, avx2::dotu, avx2::axpy, avx2::norm2};

const KernelTable *detect() {
    const char *env = std::getenv("VNCHAIN_SIMD");
    if (env != nullptr) {
        const std::string choice(env);
        if (choice == "scalar") {
            return &kScalar;
        }
        if (choice == "avx2" && avx2::supported()) {
            return &kAvx2;
        }
    }
    return avx2::supported() ? &kAvx2 : &kScalar;
}

std::atomic<const KernelTable *> &selected() {
    static std::atomic<const KernelTable *> table{detect()};
    return table;
}

}  // namespace

const KernelTable &table_for(Backend backend) {
    return backend == Backend::Avx2 ? kAvx2 : kScalar;
}

const KernelTable &active() { return *selected().load(std::memory_order_relaxed); }

bool backend_available(Backend backend) {
    return backend == Backend::Scalar || avx2::supported();
}

bool force_backend(Backend backend) {
    if (!backend_available(backend)) {
        return false;
    }
    selected().store(&table_for(backend), std::memory_order_relaxed);
    return true;
}

std::string_view backend_name(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

}  // namespace vnchain::kernels
