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

// Unitary premeasurements of a discrete observable.
//
// A Premeasurement couples an object subsystem to an instrument subsystem by a
// unitary U on object (x) instrument (object index slowest). Measured branch k
// is registered by pointer branch index_map[k]. Three equivalent defining
// properties are checked numerically:
//   calibration:    E^k phi = phi  =>  F^{m(k)} U(phi (x) r) = U(phi (x) r)
//   probabilities:  <phi|E^k|phi> = <Phi|F^{m(k)}|Phi>
//   dynamical:      F^{m(k)} U(phi (x) r) = U(E^k phi (x) r)

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnchain/branches.hpp"
#include "vnchain/hilbert.hpp"
#include "vnchain/observables.hpp"
#include "vnchain/random.hpp"

namespace vnchain {

struct ConditionReport {
    std::string condition;
    double max_residual = 0.0;
    std::size_t samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Dressing {
    Matrix object;      // V^k, unitary on the object
    Matrix instrument;  // W^k, unitary mapping range(F^{m(k)}) onto itself
};

struct IdealOptions {
    /// Pointer observable; by default |phi_B^k><phi_B^k| with eigenvalue k, plus
    /// the complement of their span as one extra branch when it is nonzero.
    std::optional<SpectralObservable> pointer;
    /// 0 completes the unitary by Gram-Schmidt over canonical vectors; any other
    /// value uses random candidate vectors drawn from that seed.
    std::uint64_t completion_seed = 0;
};

class Premeasurement {
  public:
    enum class Kind { Ideal, Exact, Custom };

    const Label &object_label() const { return object_label_; }
    const Label &instrument_label() const { return instrument_label_; }
    const SpectralObservable &measured() const { return measured_; }
    const SpectralObservable &pointer() const { return pointer_; }
    const StateVector &ready_state() const { return ready_state_; }
    const Matrix &unitary() const { return unitary_; }
    const std::vector<std::size_t> &index_map() const { return index_map_; }
    /// Pointer states of an ideal premeasurement (empty otherwise).
    const std::vector<Vector> &pointer_states() const { return pointer_states_; }
    Kind kind() const { return kind_; }
    /// (object, instrument)
    SubsystemLayout layout() const;
    std::size_t object_dim() const { return measured_.dim(); }
    std::size_t instrument_dim() const { return pointer_.dim(); }

    /// Same observables and ready state with a different coupling unitary. The
    /// result is only checked for unitarity.
    Premeasurement with_unitary(Matrix unitary,
                                const Tolerances &tol = default_tolerances()) const;

  private:
    friend Premeasurement build_ideal(const SpectralObservable &, const SubsystemBasis &,
                                      const StateVector &, const IdealOptions &,
                                      const Tolerances &);
    friend Premeasurement build_exact(const Premeasurement &, const std::vector<Dressing> &,
                                      const Tolerances &);

    Label object_label_;
    Label instrument_label_;
    SpectralObservable measured_;
    SpectralObservable pointer_;
    StateVector ready_state_;
    Matrix unitary_;
    std::vector<std::size_t> index_map_;
    std::vector<Vector> pointer_states_;
    Kind kind_ = Kind::Custom;
};

/// U(phi (x) ready) = sum_k (E^k phi) (x) |phi_B^k>, completed to a unitary on
/// the orthogonal complement of object (x) ready.
Premeasurement build_ideal(const SpectralObservable &measured, const SubsystemBasis &pointer_states,
                           const StateVector &ready_state, const IdealOptions &options = {},
                           const Tolerances &tol = default_tolerances());

/// Random V^k, and random W^k acting inside range(F^{m(k)}) and as identity elsewhere.
std::vector<Dressing> random_dressings(const Premeasurement &base, Rng &rng);

/// (sum_k V^k (x) W^k F^{m(k)} + I (x) (I - sum_k F^{m(k)})) * base.unitary.
Premeasurement build_exact(const Premeasurement &base, const std::vector<Dressing> &dressings,
                           const Tolerances &tol = default_tolerances());

/// U(phi (x) ready) on layout (object, instrument).
StateVector evolve(const Premeasurement &pm, const StateVector &object_state);

constexpr double kConditionTolerance = 1e-9;

ConditionReport check_calibration(const Premeasurement &pm, std::size_t trials,
                                  std::uint64_t seed = 0,
                                  double tolerance = kConditionTolerance);
ConditionReport check_probability_reproduction(const Premeasurement &pm, std::size_t trials,
                                               std::uint64_t seed = 0,
                                               double tolerance = kConditionTolerance);
ConditionReport check_dynamical(const Premeasurement &pm, std::size_t trials,
                                std::uint64_t seed = 0,
                                double tolerance = kConditionTolerance);

/// sum_k E^k |phi><phi| E^k
DensityOperator luders_state(const StateVector &object_state, const SpectralObservable &measured);

/// Splits `final_state` along the pointer projectors: w_k = ||F^k Phi||^2 and
/// component F^k Phi / sqrt(w_k) for w_k above tol.branch_drop.
BranchDecomposition branch_decomposition(const StateVector &final_state,
                                         const SpectralObservable &pointer,
                                         const Tolerances &tol = default_tolerances());

/// Fault injection: swaps, with a phase of i, the image of a sharp branch-0
/// object state with a vector in pointer sector m(1). Breaks every defining
/// condition; needs at least two measured branches.
Premeasurement phase_swap_corruption(const Premeasurement &pm);

}  // namespace vnchain
