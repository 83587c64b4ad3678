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

// ame.hpp: adiabatic master equation (weak coupling, no Lamb shift)

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lzx/device.hpp"
#include "lzx/eigenframe.hpp"
#include "lzx/integrator.hpp"
#include "lzx/noise.hpp"

namespace lzx {

/// 2x2 density matrix. Construction checks Hermiticity (1e-10), unit trace
/// (1e-9) and eigenvalues >= -1e-7.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(const Mat2& rho);

    static DensityMatrix projector(const Vec2& state);
    static DensityMatrix maximally_mixed();
    /// No invariant checks; used for integrator state and derivatives.
    static DensityMatrix unchecked(const Mat2& rho);

    const Mat2& matrix() const { return rho_; }
    double trace() const { return rho_.trace().real(); }
    double hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;

    std::array<double, 8> pack() const;
    static DensityMatrix unpack(const std::array<double, 8>& y);

private:
    Mat2 rho_ = (Mat2() << 1.0, 0.0, 0.0, 0.0).finished();
};

/// One Lindblad operator per Bohr frequency (GHz). Operators carry the I_p
/// prefactor (uA), so sum_w L_w = I_p sigma_z.
struct LindbladTerm {
    double omega{0.0};
    Mat2 op;
};

struct LindbladSet {
    std::array<LindbladTerm, 3> terms;  // omega = 0, +gap, -gap

    Mat2 sum() const;
};

LindbladSet lindblad_set(const OperatingPoint& point, const EigenFrame& frame);

/// Time-dependent qubit drive: constant Delta with a programmable epsilon(t).
struct Drive {
    OperatingPoint point;
    std::function<double(double)> epsilon;  // GHz
    double duration{0.0};                   // ns

    static Drive from_schedule(const SweepSchedule& schedule);
    /// Static Hamiltonian held for `duration` ns.
    static Drive constant(const OperatingPoint& point, double epsilon_GHz, double duration);
};

/// Generator of the AME for a drive. Holds a cached NoiseSpectrum.
class AmeGenerator {
public:
    AmeGenerator(Drive drive, const NoiseModel& noise);

    /// d rho / dt at time t (ns), persistent-current basis.
    Mat2 rhs(const Mat2& rho, double t) const;
    /// Same, with an explicit spectrum (used for the closed-system limit).
    static Mat2 rhs(const Mat2& rho, double epsilon_GHz, const OperatingPoint& point,
                    const std::function<double(double)>& spectrum);

    /// Relaxation and excitation rates (1/ns) in the instantaneous eigenbasis.
    std::pair<double, double> transition_rates(double t) const;

    const Drive& drive() const { return drive_; }
    const NoiseSpectrum& spectrum() const { return spectrum_; }

private:
    Drive drive_;
    NoiseSpectrum spectrum_;
};

DensityMatrix ame_rhs(const DensityMatrix& rho, double t, const SweepSchedule& schedule,
                      const NoiseModel& noise);

struct TrajectorySample {
    double t{0.0};
    double p_g{0.0};
    double p_e{0.0};
    cplx coherence{0.0};  // <g|rho|e>
};

struct EvolutionResult {
    double p_g{0.0};
    double p_e{0.0};
    DensityMatrix final_state;
    std::vector<TrajectorySample> trajectory;
    IntegrationStats stats;
    double max_trace_drift{0.0};
    double max_hermiticity_drift{0.0};
    double min_eigenvalue{1.0};
    bool used_coarse_tail{false};
};

/// Eigenbasis readout of rho at (epsilon, Delta); small negative eigenvalues
/// are clipped here.
TrajectorySample readout(const Mat2& rho, double epsilon_GHz, double delta_GHz, double t);

/// Integrates from `initial` over [0, drive.duration]. Throws NumericError if
/// an eigenvalue of rho drops below -1e-5.
EvolutionResult evolve_ame(const Drive& drive, const NoiseModel& noise, const DensityMatrix& initial,
                           const SolverOptions& opts = {});
/// Starts in the instantaneous ground-state projector at t = 0.
EvolutionResult evolve_ame(const SweepSchedule& schedule, const NoiseModel& noise,
                           const SolverOptions& opts = {});

}  // namespace lzx
