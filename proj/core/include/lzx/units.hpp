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

// units.hpp: physical constants and the canonical (GHz, ns, Phi0, uA) unit system

#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace lzx {

/// Physical constants. Energies are stored as plain frequencies E/h in GHz,
/// times in ns, flux in units of Phi0, currents in uA.
struct PhysConstants {
    static constexpr double flux_quantum = 2.067833848e-15;  // Wb
    static constexpr double planck = 6.62607015e-34;         // J s
    static constexpr double boltzmann = 1.380649e-23;        // J / K
    static constexpr double boltzmann_over_planck = boltzmann / planck * 1e-9;  // GHz / K
    static constexpr double current_to_freq = flux_quantum / planck * 1e-6 * 1e-9;  // GHz / uA
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an integrator, quadrature or fit fails to meet its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k_B T / h in GHz.
double thermal_energy(double temperature_K);

/// Full diabatic detuning 2 * I_p * flux_offset in GHz.
double persistent_current_energy(double i_p_uA, double flux_offset_phi0);

/// Plain frequency (GHz) to angular frequency (rad/ns) and back.
constexpr double to_angular(double f_GHz) { return two_pi * f_GHz; }
constexpr double from_angular(double omega) { return omega / two_pi; }

constexpr double phi0_to_weber(double phi) { return phi * PhysConstants::flux_quantum; }
constexpr double weber_to_phi0(double wb) { return wb / PhysConstants::flux_quantum; }

/// Coupling of a unit flux fluctuation to the qubit, I_p * Phi0 / hbar, in rad/ns per Phi0.
constexpr double flux_coupling(double i_p_uA) {
    return two_pi * PhysConstants::current_to_freq * i_p_uA;
}

/// PSD unit conversion: Phi0^2/Hz (= Phi0^2 s) to the internal Phi0^2 ns.
inline constexpr double per_hz_to_ns = 1e9;

}  // namespace lzx
