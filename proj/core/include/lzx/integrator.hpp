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

// integrator.hpp: adaptive Dormand-Prince 5(4) driver with per-time step caps

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "lzx/units.hpp"

namespace lzx {

struct SolverOptions {
    double rtol{1e-10};
    double atol{1e-12};
    double initial_step{1e-3};            // ns
    std::size_t max_steps{200'000'000};
    double sample_stride{0.0};            // ns between trajectory samples, 0 = none
    /// Switch to eigenbasis rate equations once |epsilon| > coarse_threshold * Delta
    /// past the crossing, for sweeps longer than coarse_min_duration.
    bool coarse_tail{false};
    double coarse_threshold{30.0};
    double coarse_min_duration{5000.0};   // ns
};

struct IntegrationStats {
    std::size_t accepted{0};
    std::size_t rejected{0};
};

/// Integrates y' = rhs(y, t) from t0 to t1 (either direction). `max_step(t)`
/// bounds |dt|; the driver lands exactly on every time in `stops` (sorted in
/// the direction of integration) and calls `observer(t, y, at_stop)` after
/// every accepted step.
template <std::size_t N, class Rhs, class MaxStep, class Observer>
IntegrationStats integrate_adaptive(Rhs&& rhs, std::array<double, N>& y, double t0, double t1,
                                    const SolverOptions& opts, MaxStep&& max_step,
                                    std::span<const double> stops, Observer&& observer) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, N>;
    auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
    auto system = [&rhs](const State& x, State& dxdt, double t) { dxdt = rhs(x, t); };

    IntegrationStats stats;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    double dt = dir * std::min(opts.initial_step, std::abs(t1 - t0));
    std::size_t next_stop = 0;
    while (next_stop < stops.size() && dir * (stops[next_stop] - t0) <= 0.0) ++next_stop;

    while (dir * (t1 - t) > 0.0) {
        if (stats.accepted + stats.rejected >= opts.max_steps) {
            std::ostringstream os;
            os << "integrator exceeded " << opts.max_steps << " steps at t = " << t << " ns";
            throw NumericError(os.str());
        }
        const double target = next_stop < stops.size() ? stops[next_stop] : t1;
        const double limit = std::min(std::abs(max_step(t)), std::abs(target - t));
        bool clamped = false;
        if (std::abs(dt) >= limit) {
            dt = dir * limit;
            clamped = true;
        }
        const double t_before = t;
        const double dt_before = dt;
        const auto outcome = stepper.try_step(system, y, t, dt);
        if (outcome == odeint::success) {
            ++stats.accepted;
            bool at_stop = false;
            if (clamped && std::abs(dt_before) == std::abs(target - t_before)) {
                t = target;  // remove round-off so stops are hit exactly
                at_stop = next_stop < stops.size();
                if (at_stop) ++next_stop;
            }
            observer(t, static_cast<const State&>(y), at_stop);
        } else {
            ++stats.rejected;
            if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
                std::ostringstream os;
                os << "integrator step size underflow at t = " << t << " ns (dt = " << dt << ")";
                throw NumericError(os.str());
            }
        }
    }
    return stats;
}

}  // namespace lzx
