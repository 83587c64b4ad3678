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

#include "lzx/ptre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/interpolators/pchip.hpp>

#include "lzx/quadrature.hpp"

namespace lzx {

namespace {

constexpr double coupling_sq_per_uA2 = flux_coupling(1.0) * flux_coupling(1.0);
constexpr double log_floor = -690.0;  // ~ log(1e-300)

double ohmic_rate(const NoiseSpectrum& spectrum, double i_p, double omega) {
    return coupling_sq_per_uA2 * i_p * i_p * spectrum.ohmic(omega);
}

double core_width_for(const NoiseModel& noise, double i_p, HighFrequencyForm form) {
    const double g0 = ohmic_rate(NoiseSpectrum(noise), i_p, 0.0);
    return form == HighFrequencyForm::normalized ? 2.0 * g0 : 2.0 * std::sqrt(g0);
}

}  // namespace

double g_low(const MrtParams& mrt, double omega) {
    const double w = to_angular(mrt.w);
    const double shift = 4.0 * to_angular(mrt.epsilon_p);
    const double x = omega - shift;
    return std::sqrt(std::numbers::pi / 2.0) / w * std::exp(-x * x / (8.0 * w * w));
}

double g_high(const NoiseModel& noise, double i_p, double omega) {
    const NoiseSpectrum spectrum(noise);
    const double g0 = ohmic_rate(spectrum, i_p, 0.0);
    if (g0 == 0.0) return 0.0;
    return 4.0 * ohmic_rate(spectrum, i_p, omega) / (omega * omega + 4.0 * g0 * g0);
}

double g_high_as_written(const NoiseModel& noise, double i_p, double omega) {
    const NoiseSpectrum spectrum(noise);
    const double g0 = ohmic_rate(spectrum, i_p, 0.0);
    if (g0 == 0.0) return 0.0;
    return 4.0 * ohmic_rate(spectrum, i_p, omega) / (omega * omega + 4.0 * g0);
}

namespace detail {

std::vector<double> convolution_breakpoints(const MrtParams& mrt, double omega, double core_width) {
    const double sigma = 2.0 * to_angular(mrt.w);
    const double centre = omega - 4.0 * to_angular(mrt.epsilon_p);
    const double lo = centre - 12.0 * sigma;
    const double hi = centre + 12.0 * sigma;
    std::vector<double> pts{lo, hi};
    for (double k : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        pts.push_back(centre - k * sigma);
        pts.push_back(centre + k * sigma);
    }
    if (core_width > 0.0) {
        pts.push_back(0.0);
        const double reach = std::max(std::abs(lo), std::abs(hi));
        for (double r = core_width; r < reach; r *= 10.0) {
            pts.push_back(r);
            pts.push_back(-r);
        }
    }
    pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double p) { return p < lo || p > hi; }),
              pts.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double integrate_segments(const std::function<double(double)>& f, const std::vector<double>& pts,
                          double rel_tol) {
    return integrate_breakpoints(f, pts, rel_tol).value;
}

}  // namespace detail

double polaron_psd(const MrtParams& mrt, const NoiseModel& noise, double i_p, double omega,
                   const PolaronSpectrumOptions& opts) {
    mrt.validate();
    const NoiseSpectrum spectrum(noise);
    const double g0 = ohmic_rate(spectrum, i_p, 0.0);
    if (g0 == 0.0) return g_low(mrt, omega);  // G_H -> 2 pi delta
    const double gg0 = 4.0 * g0 * g0;
    const double ga0 = 4.0 * g0;
    const bool normalized = opts.form == HighFrequencyForm::normalized;
    const auto gh = [&](double wp) {
        return 4.0 * ohmic_rate(spectrum, i_p, wp) / (wp * wp + (normalized ? gg0 : ga0));
    };
    return convolve_with_g_low(mrt, gh, omega, core_width_for(noise, i_p, opts.form), opts.rel_tol);
}

struct PolaronSpectrum::Interp {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

PolaronSpectrum::PolaronSpectrum(const MrtParams& mrt, const NoiseModel& noise, double i_p,
                                 double epsilon_max_GHz, const PolaronSpectrumOptions& opts)
    : mrt_(mrt), noise_(noise), i_p_(i_p), opts_(opts) {
    mrt_.validate();
    noise_.validate();
    if (!(i_p > 0.0)) throw DomainError("polaron spectrum: i_p must be > 0");
    const double w = to_angular(mrt_.w);
    omega_max_ = std::max(10.0 * (4.0 * to_angular(mrt_.epsilon_p) + 2.0 * w),
                          2.0 * to_angular(std::abs(epsilon_max_GHz)));
    const double h_target = w * opts_.resolution;
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * omega_max_ / h_target)) + 1;
    grid_.resize(n);
    values_.resize(n);
    std::vector<double> logs(n);
    const double h = 2.0 * omega_max_ / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid_[i] = -omega_max_ + h * static_cast<double>(i);
        values_[i] = direct(grid_[i]);
        if (values_[i] < 0.0) {
            std::ostringstream os;
            os << "polaron spectrum negative at omega = " << grid_[i] << ": " << values_[i];
            throw NumericError(os.str());
        }
        logs[i] = values_[i] > 0.0 ? std::max(std::log(values_[i]), log_floor) : log_floor;
    }
    interp_ = std::make_unique<Interp>(Interp{{std::vector<double>(grid_), std::move(logs)}});
}

PolaronSpectrum::~PolaronSpectrum() = default;
PolaronSpectrum::PolaronSpectrum(PolaronSpectrum&&) noexcept = default;
PolaronSpectrum& PolaronSpectrum::operator=(PolaronSpectrum&&) noexcept = default;

double PolaronSpectrum::direct(double omega) const {
    return polaron_psd(mrt_, noise_, i_p_, omega, opts_);
}

double PolaronSpectrum::operator()(double omega) const {
    if (std::abs(omega) > omega_max_) return direct(omega);
    const double l = interp_->spline(omega);
    return l <= log_floor ? 0.0 : std::exp(l);
}

PtreGenerator::PtreGenerator(const SweepSchedule& schedule, const PolaronSpectrum& spectrum,
                             bool direct_spectrum)
    : schedule_(schedule), spectrum_(&spectrum), direct_(direct_spectrum) {
    const double half = 0.5 * to_angular(schedule.point().delta);
    quarter_delta_sq_ = half * half;
}

std::pair<double, double> PtreGenerator::rates(double t) const {
    const double w = to_angular(schedule_.epsilon_at(std::clamp(t, 0.0, schedule_.t_lz())));
    // E_0 = -eps/2, E_1 = +eps/2: |1> -> |0> releases +eps
    if (direct_) return {quarter_delta_sq_ * spectrum_->direct(w), quarter_delta_sq_ * spectrum_->direct(-w)};
    return {quarter_delta_sq_ * (*spectrum_)(w), quarter_delta_sq_ * (*spectrum_)(-w)};
}

Mat2 PtreGenerator::rhs(const Mat2& rho, double t) const {
    const double eps = to_angular(schedule_.epsilon_at(std::clamp(t, 0.0, schedule_.t_lz())));
    const auto [down, up] = rates(t);
    // -i [-(eps/2) sz, rho] only rotates the coherences
    Mat2 out = Mat2::Zero();
    const cplx rot(0.0, eps);  // d rho01/dt = i eps rho01
    out(0, 1) = rot * rho(0, 1);
    out(1, 0) = std::conj(rot) * rho(1, 0);
    // D[|0><1|] at rate `down`, D[|1><0|] at rate `up`
    const double flow = down * rho(1, 1).real() - up * rho(0, 0).real();
    out(0, 0) += flow;
    out(1, 1) -= flow;
    out(0, 1) -= 0.5 * (down + up) * rho(0, 1);
    out(1, 0) -= 0.5 * (down + up) * rho(1, 0);
    return out;
}

EvolutionResult evolve_ptre(const SweepSchedule& schedule, const PolaronSpectrum& spectrum,
                            const PtreOptions& opts) {
    const PtreGenerator gen(schedule, spectrum, opts.direct_spectrum);
    const double t_end = schedule.t_lz();
    const double delta = schedule.point().delta;
    const double e0 = schedule.epsilon_at(0.0);

    Mat2 rho0 = Mat2::Zero();
    // Lower persistent-current level of -(eps/2) sigma_z.
    if (e0 < 0.0) {
        rho0(1, 1) = 1.0;
    } else {
        rho0(0, 0) = 1.0;
    }

    const double sweep_rate = std::abs(schedule.velocity());
    const double cap = 0.1 * spectrum.mrt().w / sweep_rate;
    auto max_step = [&](double) { return cap; };

    std::vector<double> stops;
    const SolverOptions& so = opts.solver;
    if (so.sample_stride > 0.0) {
        for (double s = so.sample_stride; s < t_end; s += so.sample_stride) stops.push_back(s);
    }

    EvolutionResult result;
    auto eps_at = [&](double t) { return schedule.epsilon_at(std::clamp(t, 0.0, t_end)); };
    if (so.sample_stride > 0.0) result.trajectory.push_back(readout(rho0, e0, delta, 0.0));

    Mat2 rho_final;
    if (opts.pauli_reduction) {
        std::array<double, 1> p0{rho0(0, 0).real()};
        auto rhs = [&](const std::array<double, 1>& p, double t) {
            const auto [down, up] = gen.rates(t);
            return std::array<double, 1>{down * (1.0 - p[0]) - up * p[0]};
        };
        result.stats = integrate_adaptive(rhs, p0, 0.0, t_end, so, max_step, stops,
                                          [&](double t, const std::array<double, 1>& p, bool at) {
                                              if (!at) return;
                                              Mat2 r = Mat2::Zero();
                                              r(0, 0) = p[0];
                                              r(1, 1) = 1.0 - p[0];
                                              result.trajectory.push_back(readout(r, eps_at(t), delta, t));
                                          });
        rho_final = Mat2::Zero();
        rho_final(0, 0) = p0[0];
        rho_final(1, 1) = 1.0 - p0[0];
    } else {
        auto y = DensityMatrix::unchecked(rho0).pack();
        auto rhs = [&](const std::array<double, 8>& s, double t) {
            return DensityMatrix::unchecked(gen.rhs(DensityMatrix::unpack(s).matrix(), t)).pack();
        };
        result.stats = integrate_adaptive(
            rhs, y, 0.0, t_end, so, max_step, stops,
            [&](double t, const std::array<double, 8>& s, bool at) {
                const DensityMatrix d = DensityMatrix::unpack(s);
                result.max_trace_drift = std::max(result.max_trace_drift, std::abs(d.trace() - 1.0));
                result.max_hermiticity_drift =
                    std::max(result.max_hermiticity_drift, d.hermiticity_error());
                const double me = d.min_eigenvalue();
                result.min_eigenvalue = std::min(result.min_eigenvalue, me);
                if (me < -1e-5) {
                    std::ostringstream os;
                    os << "PTRE positivity violated at t = " << t << " ns: eigenvalue " << me;
                    throw NumericError(os.str());
                }
                if (at) result.trajectory.push_back(readout(d.matrix(), eps_at(t), delta, t));
            });
        rho_final = DensityMatrix::unpack(y).matrix();
    }

    const TrajectorySample last = readout(rho_final, eps_at(t_end), delta, t_end);
    if (so.sample_stride > 0.0) result.trajectory.push_back(last);
    result.p_g = last.p_g;
    result.p_e = last.p_e;
    result.final_state = DensityMatrix::unchecked(rho_final);
    return result;
}

EvolutionResult evolve_ptre(const SweepSchedule& schedule, const MrtParams& mrt,
                            const NoiseModel& noise, const PtreOptions& opts) {
    const PolaronSpectrum spectrum(mrt, noise, schedule.point().i_p, schedule.max_abs_epsilon(),
                                   opts.spectrum);
    return evolve_ptre(schedule, spectrum, opts);
}

}  // namespace lzx
