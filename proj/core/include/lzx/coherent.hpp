// Copyright 2026 The lzx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// coherent.hpp: closed-system Landau-Zener reference

#pragma once

#include <array>

#include "lzx/device.hpp"
#include "lzx/integrator.hpp"

namespace lzx {

/// Normalised two-component state in the persistent-current basis.
class PureState {
public:
    PureState() = default;
    /// Normalises the input; throws DomainError for a zero vector.
    explicit PureState(const Vec2& amplitudes);

    const Vec2& amplitudes() const { return psi_; }
    double norm() const { return psi_.norm(); }

    std::array<double, 4> pack() const;
    /// Unpacks without renormalising, so norm drift stays observable.
    static PureState unpack_raw(const std::array<double, 4>& y);

private:
    Vec2 psi_{1.0, 0.0};
};

/// Final excited-state (diabatic-following) probability exp(-pi tau / 2).
double p_lz(double delta_GHz, double v_GHz_per_ns);

/// Populations in the instantaneous eigenbasis.
struct Populations {
    double p_g{0.0};
    double p_e{0.0};
};

struct CoherentResult {
    Populations populations;
    PureState final_state;
    IntegrationStats stats;
    double max_norm_drift{0.0};
};

/// Instantaneous ground state of the schedule's Hamiltonian at time t.
PureState ground_state_at(const SweepSchedule& schedule, double t);

/// Propagates `initial` under the schedule's Hamiltonian from t_from to t_to
/// (either direction).
CoherentResult propagate_schrodinger(const SweepSchedule& schedule, const PureState& initial,
                                     double t_from, double t_to, const SolverOptions& opts = {});

/// Starts in the instantaneous ground state at t = 0 and reports populations
/// at t = t_lz.
CoherentResult evolve_schrodinger(const SweepSchedule& schedule, const SolverOptions& opts = {});

/// Populations of a pure state in the eigenbasis of the schedule at time t.
Populations eigen_populations(const SweepSchedule& schedule, double t, const PureState& state);

}  // namespace lzx
