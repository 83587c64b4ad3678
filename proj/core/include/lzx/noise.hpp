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

// noise.hpp: quantum 1/f + ohmic flux-noise spectra and MRT parameters
//
// Angular frequencies are in rad/ns. PSD values are returned in the internal
// unit Phi0^2 ns (1 Phi0^2/Hz = 1e9 Phi0^2 ns). Positive omega means energy
// released by the qubit into the bath, so S(+w) > S(-w) at finite temperature.

#pragma once

#include "lzx/units.hpp"

namespace lzx {

struct NoiseModel {
    double a_star{8.7e-6 * 8.7e-6};           // Phi0^2/Hz at 1 Hz
    double alpha{0.91};
    double b{1.3e-30};                          // Phi0^2/Hz^2
    double gamma{1.0};
    double temperature{0.020};                  // K
    double omega_l{two_pi * 0.010};             // rad/ns, AME low cutoff
    double omega_h{two_pi * 10.0};              // rad/ns, AME high cutoff
    double omega_low_mrt{two_pi * 4e-9};        // rad/ns, 4 Hz
    double omega_high_mrt{two_pi * 10.0};       // rad/ns

    static NoiseModel nominal() { return {}; }

    void validate() const;

    /// hbar * beta in ns/rad.
    double hbar_beta() const;

    NoiseModel with_temperature(double kelvin) const;
    NoiseModel scaled_amplitudes(double factor) const;
};

/// Raw 1/f amplitude A in internal units from the 1 Hz-normalised A*.
double amplitude_from_a_star(double a_star, double alpha, double temperature_K);
double a_star_from_amplitude(double amplitude, double alpha, double temperature_K);

/// Cached evaluator for the PSD family of one NoiseModel.
class NoiseSpectrum {
public:
    explicit NoiseSpectrum(const NoiseModel& model);

    const NoiseModel& model() const { return model_; }

    /// 1/f component. Throws DomainError at omega == 0.
    double one_over_f(double omega) const;
    /// Ohmic component; omega == 0 is the analytic limit.
    double ohmic(double omega) const;
    /// Cutoff-regularised sum used by the adiabatic master equation.
    double ame(double omega) const;

    /// 1/f symmetrised part, A omega^(1-alpha) coth(beta hbar omega / 2) for omega > 0.
    double one_over_f_symmetric(double omega) const;
    /// 1/f antisymmetrised part, A omega / |omega|^alpha.
    double one_over_f_antisymmetric(double omega) const;

    double amplitude_one_over_f() const { return a_; }
    double amplitude_ohmic() const { return b_; }

private:
    double thermal_factor(double omega) const;  // 1 + coth(beta hbar omega / 2)

    NoiseModel model_;
    double hbar_beta_;
    double a_;  // Phi0^2 ns (rad/ns)^(alpha-1)
    double b_;  // Phi0^2 ns (rad/ns)^(-gamma)
    double ame_clamp_;
};

double psd_one_over_f(const NoiseModel& model, double omega);
double psd_ohmic(const NoiseModel& model, double omega);
double psd_ame(const NoiseModel& model, double omega);

template <class Psd>
double symmetrize(const Psd& psd, double omega) {
    return 0.5 * (psd(omega) + psd(-omega));
}

template <class Psd>
double antisymmetrize(const Psd& psd, double omega) {
    return 0.5 * (psd(omega) - psd(-omega));
}

/// Macroscopic-resonant-tunnelling parameters, both in GHz.
struct MrtParams {
    double w{0.0};
    double epsilon_p{0.0};

    /// epsilon_p = W^2 / (2 k_B T).
    static MrtParams from_fdt(double w_GHz, double temperature_K);
    void validate() const;
};

/// W from 2 I_p^2 int dw/2pi S+_1/f(w) over [omega_low_mrt, omega_high_mrt].
double mrt_width(const NoiseModel& model, double i_p, double rel_tol = 1e-8);
/// epsilon_p from 2 I_p^2 int dw/2pi S-_1/f(w) / (hbar w) over the same limits.
double reorganization_energy_integral(const NoiseModel& model, double i_p, double rel_tol = 1e-8);
MrtParams mrt_params_fdt(const NoiseModel& model, double i_p, double rel_tol = 1e-8);

}  // namespace lzx
