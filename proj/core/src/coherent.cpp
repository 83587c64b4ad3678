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

#include "lzx/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lzx/eigenframe.hpp"

namespace lzx {

namespace {
constexpr double kNormSafeRtol = 1e-13;
}  // namespace

PureState::PureState(const Vec2& amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw DomainError("PureState: zero vector");
    psi_ = amplitudes / n;
}

std::array<double, 4> PureState::pack() const {
    return {psi_(0).real(), psi_(0).imag(), psi_(1).real(), psi_(1).imag()};
}

PureState PureState::unpack_raw(const std::array<double, 4>& y) {
    PureState s;
    s.psi_ = Vec2(cplx(y[0], y[1]), cplx(y[2], y[3]));
    return s;
}

double p_lz(double delta_GHz, double v_GHz_per_ns) {
    if (!(v_GHz_per_ns > 0.0)) throw DomainError("p_lz: sweep velocity must be positive");
    if (!(delta_GHz >= 0.0)) throw DomainError("p_lz: delta must be >= 0");
    return std::exp(-0.5 * std::numbers::pi * dimensionless_time(delta_GHz, v_GHz_per_ns));
}

PureState ground_state_at(const SweepSchedule& schedule, double t) {
    const EigenFrame frame = eigenframe(schedule.epsilon_at(t), schedule.point().delta);
    return PureState(frame.ground());
}

Populations eigen_populations(const SweepSchedule& schedule, double t, const PureState& state) {
    const EigenFrame frame = eigenframe(schedule.epsilon_at(t), schedule.point().delta);
    const double pg = std::norm(frame.ground().dot(state.amplitudes()));
    const double pe = std::norm(frame.excited().dot(state.amplitudes()));
    const double total = pg + pe;
    return {pg / total, pe / total};
}

CoherentResult propagate_schrodinger(const SweepSchedule& schedule, const PureState& initial,
                                     double t_from, double t_to, const SolverOptions& opts) {
    const double half_delta = 0.5 * to_angular(schedule.point().delta);
    const double t_lz = schedule.t_lz();
    auto rhs = [&](const std::array<double, 4>& y, double t) {
        // i d/dt psi = H psi, H = -(eps/2) sz - (Delta/2) sx in rad/ns
        const double he = 0.5 * to_angular(schedule.epsilon_at(std::clamp(t, 0.0, t_lz)));
        const double h00 = -he, h11 = he, h01 = -half_delta;
        const double hr0 = h00 * y[0] + h01 * y[2];
        const double hi0 = h00 * y[1] + h01 * y[3];
        const double hr1 = h01 * y[0] + h11 * y[2];
        const double hi1 = h01 * y[1] + h11 * y[3];
        return std::array<double, 4>{hi0, -hr0, hi1, -hr1};
    };
    auto max_step = [&](double t) {
        const double gap = schedule.gap_at(std::clamp(t, 0.0, t_lz));
        return gap > 0.0 ? 1.0 / (20.0 * gap) : t_lz;
    };

    // Dopri5 drifts off the unit sphere by roughly rtol/4 per step; long sweeps
    // need a tighter floor to keep the norm within 1e-9.
    SolverOptions tight = opts;
    tight.rtol = std::min(opts.rtol, kNormSafeRtol);
    tight.atol = std::min(opts.atol, kNormSafeRtol * 1e-2);

    CoherentResult result;
    auto y = initial.pack();
    double drift = 0.0;
    result.stats = integrate_adaptive(rhs, y, t_from, t_to, tight, max_step, {},
                                      [&](double, const std::array<double, 4>& s, bool) {
                                          const double n2 = s[0] * s[0] + s[1] * s[1] +
                                                            s[2] * s[2] + s[3] * s[3];
                                          drift = std::max(drift, std::abs(std::sqrt(n2) - 1.0));
                                      });
    result.final_state = PureState::unpack_raw(y);
    result.max_norm_drift = drift;
    result.populations = eigen_populations(schedule, std::clamp(t_to, 0.0, t_lz), result.final_state);
    return result;
}

CoherentResult evolve_schrodinger(const SweepSchedule& schedule, const SolverOptions& opts) {
    return propagate_schrodinger(schedule, ground_state_at(schedule, 0.0), 0.0, schedule.t_lz(),
                                 opts);
}

}  // namespace lzx
