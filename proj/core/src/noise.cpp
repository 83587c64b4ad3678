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

#include "lzx/noise.hpp"

#include <cmath>
#include <string>

#include "lzx/quadrature.hpp"

namespace lzx {

namespace {

// Phi0^2/Hz * Hz^(alpha) normalisation of A* rescaled to (Phi0^2 ns) GHz^alpha.
double a_star_internal(double a_star, double alpha) {
    return a_star * std::pow(per_hz_to_ns, 1.0 - alpha);
}

double hbar_beta_of(double temperature_K) { return 1.0 / to_angular(thermal_energy(temperature_K)); }

}  // namespace

void NoiseModel::validate() const {
    auto bad = [](const std::string& what) { throw DomainError("noise model: " + what); };
    if (!(a_star >= 0.0)) bad("a_star must be >= 0");
    if (!(b >= 0.0)) bad("b must be >= 0");
    if (!(temperature > 0.0)) bad("temperature must be > 0");
    if (!(alpha > 0.0 && alpha < 2.0)) bad("alpha must lie in (0, 2)");
    if (!(gamma > 0.0)) bad("gamma must be > 0");
    if (!(omega_l > 0.0 && omega_l < omega_h)) bad("require 0 < omega_l < omega_h");
    if (!(omega_low_mrt > 0.0 && omega_low_mrt < omega_high_mrt)) {
        bad("require 0 < omega_low_mrt < omega_high_mrt");
    }
}

double NoiseModel::hbar_beta() const { return hbar_beta_of(temperature); }

NoiseModel NoiseModel::with_temperature(double kelvin) const {
    NoiseModel m = *this;
    m.temperature = kelvin;
    return m;
}

NoiseModel NoiseModel::scaled_amplitudes(double factor) const {
    NoiseModel m = *this;
    m.a_star *= factor;
    m.b *= factor;
    return m;
}

double amplitude_from_a_star(double a_star, double alpha, double temperature_K) {
    return a_star_internal(a_star, alpha) * hbar_beta_of(temperature_K) * std::pow(two_pi, alpha) /
           2.0;
}

double a_star_from_amplitude(double amplitude, double alpha, double temperature_K) {
    const double internal =
        2.0 * amplitude / (hbar_beta_of(temperature_K) * std::pow(two_pi, alpha));
    return internal / std::pow(per_hz_to_ns, 1.0 - alpha);
}

NoiseSpectrum::NoiseSpectrum(const NoiseModel& model) : model_(model) {
    model_.validate();
    hbar_beta_ = model_.hbar_beta();
    a_ = amplitude_from_a_star(model_.a_star, model_.alpha, model_.temperature);
    b_ = model_.b * std::pow(per_hz_to_ns, model_.gamma + 1.0);
    ame_clamp_ = one_over_f(model_.omega_l) * std::exp(-model_.omega_l / model_.omega_h);
}

double NoiseSpectrum::thermal_factor(double omega) const {
    // 1 + coth(x/2) = 2 / (1 - exp(-x))
    return 2.0 / -std::expm1(-hbar_beta_ * omega);
}

double NoiseSpectrum::one_over_f(double omega) const {
    if (omega == 0.0) throw DomainError("psd_one_over_f: divergent at omega = 0");
    return a_ * omega / std::pow(std::abs(omega), model_.alpha) * thermal_factor(omega);
}

double NoiseSpectrum::ohmic(double omega) const {
    if (b_ == 0.0) return 0.0;
    if (omega == 0.0) {
        if (model_.gamma == 1.0) return 2.0 * b_ / hbar_beta_;
        if (model_.gamma > 1.0) return 0.0;
        throw DomainError("psd_ohmic: divergent at omega = 0 for gamma < 1");
    }
    return b_ * omega * std::pow(std::abs(omega), model_.gamma - 1.0) * thermal_factor(omega);
}

double NoiseSpectrum::ame(double omega) const {
    const double cut = std::exp(-std::abs(omega) / model_.omega_h);
    const double high = ohmic(omega) * cut;
    if (std::abs(omega) > model_.omega_l) return one_over_f(omega) * cut + high;
    return ame_clamp_ + high;
}

double NoiseSpectrum::one_over_f_symmetric(double omega) const {
    if (omega == 0.0) throw DomainError("symmetrized 1/f PSD: divergent at omega = 0");
    const double x = 0.5 * hbar_beta_ * std::abs(omega);
    return a_ * std::pow(std::abs(omega), 1.0 - model_.alpha) / std::tanh(x);
}

double NoiseSpectrum::one_over_f_antisymmetric(double omega) const {
    if (omega == 0.0) throw DomainError("antisymmetrized 1/f PSD: divergent at omega = 0");
    return a_ * omega / std::pow(std::abs(omega), model_.alpha);
}

double psd_one_over_f(const NoiseModel& model, double omega) {
    return NoiseSpectrum(model).one_over_f(omega);
}

double psd_ohmic(const NoiseModel& model, double omega) { return NoiseSpectrum(model).ohmic(omega); }

double psd_ame(const NoiseModel& model, double omega) { return NoiseSpectrum(model).ame(omega); }

MrtParams MrtParams::from_fdt(double w_GHz, double temperature_K) {
    MrtParams p;
    p.w = w_GHz;
    p.epsilon_p = w_GHz * w_GHz / (2.0 * thermal_energy(temperature_K));
    p.validate();
    return p;
}

void MrtParams::validate() const {
    if (!(w > 0.0)) throw DomainError("MRT parameters: W must be > 0");
    if (!(epsilon_p > 0.0)) throw DomainError("MRT parameters: epsilon_p must be > 0");
}

double mrt_width(const NoiseModel& model, double i_p, double rel_tol) {
    if (!(i_p > 0.0)) throw DomainError("mrt_width: i_p must be > 0");
    const NoiseSpectrum spectrum(model);
    const auto integral = integrate_log_partition(
        [&](double omega) { return spectrum.one_over_f_symmetric(omega); }, model.omega_low_mrt,
        model.omega_high_mrt, rel_tol);
    const double c = PhysConstants::current_to_freq * i_p;
    return std::sqrt(2.0 * c * c * integral.value / two_pi);
}

double reorganization_energy_integral(const NoiseModel& model, double i_p, double rel_tol) {
    if (!(i_p > 0.0)) throw DomainError("reorganization_energy_integral: i_p must be > 0");
    const NoiseSpectrum spectrum(model);
    const auto integral = integrate_log_partition(
        [&](double omega) { return spectrum.one_over_f_antisymmetric(omega) / omega; },
        model.omega_low_mrt, model.omega_high_mrt, rel_tol);
    const double c = PhysConstants::current_to_freq * i_p;
    // angular energy 2 g^2 int dw/2pi S-/w with g = 2 pi c, reported as E/h
    return two_pi * 2.0 * c * c * integral.value / two_pi;
}

MrtParams mrt_params_fdt(const NoiseModel& model, double i_p, double rel_tol) {
    return MrtParams::from_fdt(mrt_width(model, i_p, rel_tol), model.temperature);
}

}  // namespace lzx
