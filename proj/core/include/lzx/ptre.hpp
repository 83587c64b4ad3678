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

// ptre.hpp: polaron-transformed Redfield equation (strong coupling to 1/f noise)
//
// Conventions: hbar = 1 with angular frequencies in rad/ns, so G_L, G_H and the
// polaron PSD are evaluated at omega in rad/ns and S~ carries units of ns. A
// positive argument is the energy released to the bath by a transition.

#pragma once

#include <memory>
#include <vector>

#include "lzx/ame.hpp"
#include "lzx/device.hpp"
#include "lzx/integrator.hpp"
#include "lzx/noise.hpp"

namespace lzx {

/// Low-frequency (MRT) kernel: Gaussian centred at 4 eps_p with standard
/// deviation 2 W, normalised so that int G_L dw / 2pi = 1.
double g_low(const MrtParams& mrt, double omega);

/// High-frequency (ohmic) kernel, the Lorentzian-type factor
/// 4 gamma(w) / (w^2 + 4 gamma(0)^2) with gamma(w) = (I_p Phi0/hbar)^2 S_ohmic(w).
/// Its integral over dw / 2pi is 1 up to the ohmic tails.
double g_high(const NoiseModel& noise, double i_p, double omega);

/// The high-frequency kernel exactly as printed, 4 S(w) I_p^2 / (w^2 + 4 S(0) I_p^2),
/// with hbar = 1 in rad/ns. Not dimensionally homogeneous; kept for comparison.
double g_high_as_written(const NoiseModel& noise, double i_p, double omega);

enum class HighFrequencyForm { normalized, as_written };

struct PolaronSpectrumOptions {
    double rel_tol{1e-9};
    double resolution{1.0 / 20.0};  // grid spacing as a fraction of W
    HighFrequencyForm form{HighFrequencyForm::normalized};
};

/// S~(w) = int dw'/2pi G_L(w - w') G_H(w') by adaptive quadrature.
double polaron_psd(const MrtParams& mrt, const NoiseModel& noise, double i_p, double omega,
                   const PolaronSpectrumOptions& opts = {});

/// Convolution of an arbitrary high-frequency kernel with G_L. `core_width`
/// marks the scale of any sharp feature of g_high around omega' = 0.
template <class GHigh>
double convolve_with_g_low(const MrtParams& mrt, const GHigh& g_high, double omega,
                           double core_width, double rel_tol = 1e-10);

/// Precomputed S~ on a symmetric grid covering |w| <= max(10 (4 eps_p + 2 W), 2 eps_max)
/// with spacing <= W/20; cubic interpolation of log S~ between nodes.
class PolaronSpectrum {
public:
    PolaronSpectrum(const MrtParams& mrt, const NoiseModel& noise, double i_p,
                    double epsilon_max_GHz, const PolaronSpectrumOptions& opts = {});
    ~PolaronSpectrum();
    PolaronSpectrum(PolaronSpectrum&&) noexcept;
    PolaronSpectrum& operator=(PolaronSpectrum&&) noexcept;

    /// Interpolated value; falls back to direct quadrature outside the grid.
    double operator()(double omega) const;
    double direct(double omega) const;

    const MrtParams& mrt() const { return mrt_; }
    double i_p() const { return i_p_; }
    double omega_max() const { return omega_max_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

private:
    MrtParams mrt_;
    NoiseModel noise_;
    double i_p_;
    PolaronSpectrumOptions opts_;
    double omega_max_;
    std::vector<double> grid_;
    std::vector<double> values_;
    struct Interp;
    std::unique_ptr<Interp> interp_;
};

struct PtreOptions {
    SolverOptions solver{};
    /// Evolve populations only (Pauli master equation) instead of the full 2x2 state.
    bool pauli_reduction{false};
    /// Evaluate the convolution at every RHS call instead of interpolating (slow; validation only).
    bool direct_spectrum{false};
    PolaronSpectrumOptions spectrum{};
};

/// Polaron-frame Hamiltonian -(eps/2) sigma_z and raising/lowering rates.
class PtreGenerator {
public:
    PtreGenerator(const SweepSchedule& schedule, const PolaronSpectrum& spectrum,
                  bool direct_spectrum = false);

    Mat2 rhs(const Mat2& rho, double t) const;
    /// Rates (1/ns) for |1> -> |0> and |0> -> |1>.
    std::pair<double, double> rates(double t) const;

private:
    SweepSchedule schedule_;
    const PolaronSpectrum* spectrum_;
    bool direct_;
    double quarter_delta_sq_;  // (Delta/2)^2 in (rad/ns)^2
};

/// Starts in the lower-energy persistent-current state at t = 0; populations
/// are read out in the lab-frame eigenbasis at t_lz.
EvolutionResult evolve_ptre(const SweepSchedule& schedule, const PolaronSpectrum& spectrum,
                            const PtreOptions& opts = {});
EvolutionResult evolve_ptre(const SweepSchedule& schedule, const MrtParams& mrt,
                            const NoiseModel& noise, const PtreOptions& opts = {});

// ---------------------------------------------------------------------------

namespace detail {
std::vector<double> convolution_breakpoints(const MrtParams& mrt, double omega, double core_width);
double integrate_segments(const std::function<double(double)>& f, const std::vector<double>& pts,
                          double rel_tol);
}  // namespace detail

template <class GHigh>
double convolve_with_g_low(const MrtParams& mrt, const GHigh& g_high, double omega,
                           double core_width, double rel_tol) {
    const auto pts = detail::convolution_breakpoints(mrt, omega, core_width);
    const auto f = [&](double wp) { return g_low(mrt, omega - wp) * g_high(wp); };
    return detail::integrate_segments(f, pts, rel_tol) / two_pi;
}

}  // namespace lzx
