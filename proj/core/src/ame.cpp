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

#include "lzx/ame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lzx {

namespace {

// (I_p Phi0 / hbar)^2 per uA^2, converting I_p-weighted operators to rad/ns.
constexpr double coupling_sq_per_uA2 = flux_coupling(1.0) * flux_coupling(1.0);

double min_eig(const Mat2& rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    return 0.5 * (a + d) - std::hypot(0.5 * (a - d), std::abs(rho(0, 1)));
}

Mat2 commutator_term(const Mat2& rho, double epsilon_GHz, double delta_GHz) {
    Mat2 h;
    h << -0.5 * epsilon_GHz, -0.5 * delta_GHz, -0.5 * delta_GHz, 0.5 * epsilon_GHz;
    h *= two_pi;
    return cplx(0.0, -1.0) * (h * rho - rho * h);
}

void add_dissipator(Mat2& out, const Mat2& rho, const Mat2& op, double rate) {
    if (rate == 0.0) return;
    const Mat2 opd = op.adjoint();
    const Mat2 n = opd * op;
    out += rate * (op * rho * opd - 0.5 * (n * rho + rho * n));
}

}  // namespace

DensityMatrix::DensityMatrix(const Mat2& rho) : rho_(rho) {
    std::ostringstream os;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        os << "density matrix is not Hermitian";
    } else if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9) {
        os << "density matrix trace " << rho.trace().real() << " != 1";
    } else if (min_eig(rho) < -1e-7) {
        os << "density matrix has eigenvalue " << min_eig(rho);
    }
    if (!os.str().empty()) throw DomainError(os.str());
}

DensityMatrix DensityMatrix::projector(const Vec2& state) {
    const Vec2 v = state.normalized();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Mat2::Identity() * 0.5);
}

DensityMatrix DensityMatrix::unchecked(const Mat2& rho) {
    DensityMatrix d;
    d.rho_ = rho;
    return d;
}

double DensityMatrix::min_eigenvalue() const { return min_eig(rho_); }

std::array<double, 8> DensityMatrix::pack() const {
    return {rho_(0, 0).real(), rho_(0, 0).imag(), rho_(0, 1).real(), rho_(0, 1).imag(),
            rho_(1, 0).real(), rho_(1, 0).imag(), rho_(1, 1).real(), rho_(1, 1).imag()};
}

DensityMatrix DensityMatrix::unpack(const std::array<double, 8>& y) {
    Mat2 m;
    m << cplx(y[0], y[1]), cplx(y[2], y[3]), cplx(y[4], y[5]), cplx(y[6], y[7]);
    return unchecked(m);
}

Mat2 LindbladSet::sum() const {
    Mat2 s = Mat2::Zero();
    for (const auto& term : terms) s += term.op;
    return s;
}

LindbladSet lindblad_set(const OperatingPoint& point, const EigenFrame& frame) {
    const Mat2 sz = sigma_z();
    const Vec2& g = frame.ground();
    const Vec2& e = frame.excited();
    const cplx gg = frame.element(sz, 0, 0);
    const cplx ee = frame.element(sz, 1, 1);
    const cplx ge = frame.element(sz, 0, 1);
    const cplx eg = frame.element(sz, 1, 0);
    LindbladSet set;
    set.terms[0] = {0.0, point.i_p * (gg * g * g.adjoint() + ee * e * e.adjoint())};
    // E_e - E_g = +gap: |g><e|, energy released to the bath
    set.terms[1] = {frame.gap(), point.i_p * ge * g * e.adjoint()};
    set.terms[2] = {-frame.gap(), point.i_p * eg * e * g.adjoint()};
    return set;
}

Drive Drive::from_schedule(const SweepSchedule& schedule) {
    Drive d;
    d.point = schedule.point();
    d.duration = schedule.t_lz();
    d.epsilon = [schedule](double t) {
        return schedule.epsilon_at(std::clamp(t, 0.0, schedule.t_lz()));
    };
    return d;
}

Drive Drive::constant(const OperatingPoint& point, double epsilon_GHz, double duration) {
    point.validate();
    if (!(duration > 0.0)) throw DomainError("constant drive: duration must be positive");
    Drive d;
    d.point = point;
    d.duration = duration;
    d.epsilon = [epsilon_GHz](double) { return epsilon_GHz; };
    return d;
}

AmeGenerator::AmeGenerator(Drive drive, const NoiseModel& noise)
    : drive_(std::move(drive)), spectrum_(noise) {}

Mat2 AmeGenerator::rhs(const Mat2& rho, double epsilon_GHz, const OperatingPoint& point,
                       const std::function<double(double)>& spectrum) {
    Mat2 out = commutator_term(rho, epsilon_GHz, point.delta);
    const EigenFrame frame = eigenframe(epsilon_GHz, point.delta);
    const LindbladSet set = lindblad_set(point, frame);
    for (const auto& term : set.terms) {
        const double s = spectrum(to_angular(term.omega));
        add_dissipator(out, rho, term.op, coupling_sq_per_uA2 * s);
    }
    return out;
}

Mat2 AmeGenerator::rhs(const Mat2& rho, double t) const {
    return rhs(rho, drive_.epsilon(t), drive_.point,
               [this](double omega) { return spectrum_.ame(omega); });
}

std::pair<double, double> AmeGenerator::transition_rates(double t) const {
    const EigenFrame frame = eigenframe(drive_.epsilon(t), drive_.point.delta);
    const double m2 = std::norm(drive_.point.i_p * frame.element(sigma_z(), 0, 1));
    const double w = to_angular(frame.gap());
    return {coupling_sq_per_uA2 * m2 * spectrum_.ame(w),
            coupling_sq_per_uA2 * m2 * spectrum_.ame(-w)};
}

DensityMatrix ame_rhs(const DensityMatrix& rho, double t, const SweepSchedule& schedule,
                      const NoiseModel& noise) {
    schedule.epsilon_at(t);  // domain check
    const AmeGenerator gen(Drive::from_schedule(schedule), noise);
    return DensityMatrix::unchecked(gen.rhs(rho.matrix(), t));
}

TrajectorySample readout(const Mat2& rho, double epsilon_GHz, double delta_GHz, double t) {
    const EigenFrame frame = eigenframe(epsilon_GHz, delta_GHz);
    const Mat2 u = frame.basis();
    const Mat2 r = u.adjoint() * rho * u;
    double pg = std::clamp(r(0, 0).real(), 0.0, 1.0);
    double pe = std::clamp(r(1, 1).real(), 0.0, 1.0);
    const double total = pg + pe;
    if (total > 0.0) {
        pg /= total;
        pe /= total;
    }
    return {t, pg, pe, r(0, 1)};
}

EvolutionResult evolve_ame(const Drive& drive, const NoiseModel& noise,
                           const DensityMatrix& initial, const SolverOptions& opts) {
    const AmeGenerator gen(drive, noise);
    const double delta = drive.point.delta;
    const double t_end = drive.duration;

    // Optional hand-off to eigenbasis rate equations far past the crossing.
    double t_switch = t_end;
    if (opts.coarse_tail && t_end > opts.coarse_min_duration && delta > 0.0) {
        const double threshold = opts.coarse_threshold * delta;
        const double e_end = drive.epsilon(t_end);
        if (e_end > threshold) {
            // epsilon is monotone for sweeps; bisect for the first time it exceeds the threshold
            double lo = 0.0, hi = t_end;
            for (int i = 0; i < 200 && hi - lo > 1e-9 * t_end; ++i) {
                const double mid = 0.5 * (lo + hi);
                (drive.epsilon(mid) > threshold ? hi : lo) = mid;
            }
            t_switch = hi;
        }
    }

    std::vector<double> stops;
    if (opts.sample_stride > 0.0) {
        for (double s = opts.sample_stride; s < t_end; s += opts.sample_stride) stops.push_back(s);
    }

    EvolutionResult result;
    if (opts.sample_stride > 0.0) {
        result.trajectory.push_back(readout(initial.matrix(), drive.epsilon(0.0), delta, 0.0));
    }

    auto rhs = [&](const std::array<double, 8>& y, double t) {
        return DensityMatrix::unchecked(gen.rhs(DensityMatrix::unpack(y).matrix(), t)).pack();
    };
    auto max_step = [&](double t) {
        const double gap = std::hypot(drive.epsilon(t), delta);
        return gap > 0.0 ? 1.0 / (20.0 * gap) : t_end;
    };
    auto observer = [&](double t, const std::array<double, 8>& y, bool at_stop) {
        const Mat2 rho = DensityMatrix::unpack(y).matrix();
        result.max_trace_drift = std::max(result.max_trace_drift, std::abs(rho.trace().real() - 1.0));
        result.max_hermiticity_drift =
            std::max(result.max_hermiticity_drift, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        const double me = min_eig(rho);
        result.min_eigenvalue = std::min(result.min_eigenvalue, me);
        if (me < -1e-5) {
            std::ostringstream os;
            os << "AME positivity violated at t = " << t << " ns: eigenvalue " << me << " after "
               << result.stats.accepted << " steps";
            throw NumericError(os.str());
        }
        if (at_stop) result.trajectory.push_back(readout(rho, drive.epsilon(t), delta, t));
    };

    auto y = initial.pack();
    const auto head_stops = std::span<const double>(stops).subspan(
        0, std::lower_bound(stops.begin(), stops.end(), t_switch) - stops.begin());
    const auto s1 = integrate_adaptive(rhs, y, 0.0, t_switch, opts, max_step, head_stops, observer);
    result.stats.accepted += s1.accepted;
    result.stats.rejected += s1.rejected;
    Mat2 rho = DensityMatrix::unpack(y).matrix();

    if (t_switch < t_end) {
        result.used_coarse_tail = true;
        const TrajectorySample start = readout(rho, drive.epsilon(t_switch), delta, t_switch);
        std::array<double, 1> pe{start.p_e};
        auto rate_rhs = [&](const std::array<double, 1>& p, double t) {
            const auto [down, up] = gen.transition_rates(t);
            return std::array<double, 1>{-down * p[0] + up * (1.0 - p[0])};
        };
        const auto tail_stops = std::span<const double>(stops).subspan(head_stops.size());
        const auto s2 = integrate_adaptive(
            rate_rhs, pe, t_switch, t_end, opts, [&](double) { return t_end; }, tail_stops,
            [&](double t, const std::array<double, 1>& p, bool at_stop) {
                if (at_stop) result.trajectory.push_back({t, 1.0 - p[0], p[0], 0.0});
            });
        result.stats.accepted += s2.accepted;
        result.stats.rejected += s2.rejected;
        // Rebuild a diagonal state in the final eigenbasis.
        const EigenFrame frame = eigenframe(drive.epsilon(t_end), delta);
        const double p = std::clamp(pe[0], 0.0, 1.0);
        rho = (1.0 - p) * frame.ground() * frame.ground().adjoint() +
              p * frame.excited() * frame.excited().adjoint();
    }

    const TrajectorySample last = readout(rho, drive.epsilon(t_end), delta, t_end);
    if (opts.sample_stride > 0.0) result.trajectory.push_back(last);
    result.p_g = last.p_g;
    result.p_e = last.p_e;
    result.final_state = DensityMatrix::unchecked(rho);
    return result;
}

EvolutionResult evolve_ame(const SweepSchedule& schedule, const NoiseModel& noise,
                           const SolverOptions& opts) {
    const EigenFrame frame = eigenframe(schedule.epsilon_at(0.0), schedule.point().delta);
    return evolve_ame(Drive::from_schedule(schedule), noise,
                      DensityMatrix::projector(frame.ground()), opts);
}

}  // namespace lzx
