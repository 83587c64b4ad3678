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

#include "lzx/gap_fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "lzx/units.hpp"

namespace lzx {

DecaySeries::DecaySeries(std::vector<DecayPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!(p.p_e >= 0.0 && p.p_e <= 1.0)) {
            throw DomainError(fmt::format("decay series: p_e = {} out of [0, 1] at row {}", p.p_e, i));
        }
        if (i > 0 && !(p.t_lz > points_[i - 1].t_lz)) {
            throw DomainError(fmt::format("decay series: t_lz not strictly increasing at row {}", i));
        }
    }
}

DecaySeries DecaySeries::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open decay series '" + path + "'");
    std::string line;
    std::getline(in, line);
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line != "t_lz_ns,p_e") {
        throw std::runtime_error("decay series '" + path + "': expected header t_lz_ns,p_e");
    }
    std::vector<DecayPoint> pts;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        DecayPoint p;
        if (!(row >> p.t_lz >> p.p_e)) {
            throw std::runtime_error("decay series '" + path + "': malformed row '" + line + "'");
        }
        pts.push_back(p);
    }
    return DecaySeries(std::move(pts));
}

namespace {

struct WindowFit {
    ExponentialFit fit;
    bool ok{false};
};

WindowFit fit_window(std::span<const DecayPoint> window, const FitOptions& opts) {
    // Weighted log-linear fit through the origin. The weights p^2 come from the
    // fitted model rather than the data, since noisy observed weights bias kappa.
    double kappa = 0.0, swtt = 0.0;
    std::size_t used = 0;
    for (int iter = 0; iter < 8; ++iter) {
        double swty = 0.0;
        swtt = 0.0;
        used = 0;
        for (const auto& p : window) {
            if (p.p_e < opts.min_probability) continue;
            const double m = iter == 0 ? p.p_e : std::exp(-kappa * p.t_lz);
            const double w = m * m;
            swtt += w * p.t_lz * p.t_lz;
            swty += w * p.t_lz * std::log(p.p_e);
            ++used;
        }
        if (used < 2 || swtt == 0.0) return {};
        const double next = -swty / swtt;
        const bool converged = std::abs(next - kappa) <= 1e-14 * std::abs(next);
        kappa = next;
        if (converged) break;
    }
    // Standard error from the linearised model: var(kappa) = s^2 / sum (t m)^2 with
    // s^2 the residual variance in probability space.
    double srr = 0.0, sq = 0.0;
    for (const auto& p : window) {
        const double model = std::exp(-kappa * p.t_lz);
        sq += (p.p_e - model) * (p.p_e - model);
        if (p.p_e < opts.min_probability) continue;
        srr += (p.p_e - model) * (p.p_e - model);
    }
    WindowFit out;
    out.fit.kappa = kappa;
    out.fit.kappa_stderr = std::sqrt(srr / static_cast<double>(used - 1) / swtt);
    out.fit.window_max = window.back().t_lz;
    out.fit.mse = sq / static_cast<double>(window.size());
    out.fit.points_used = used;
    out.ok = true;
    return out;
}

}  // namespace

ExponentialFit fit_exponential_adaptive(const DecaySeries& series, const FitOptions& opts) {
    const auto& pts = series.points();
    std::size_t n0 = 0;
    while (n0 < pts.size() && pts[n0].t_lz <= opts.initial_window) ++n0;
    if (n0 < 3) {
        throw InsufficientDataError(fmt::format(
            "gap fit: {} points with t_lz <= {} ns, need at least 3", n0, opts.initial_window));
    }
    const std::span<const DecayPoint> all(pts);
    WindowFit best = fit_window(all.first(n0), opts);
    if (!best.ok) {
        throw InsufficientDataError("gap fit: initial window has fewer than 2 points above p_e = " +
                                    std::to_string(opts.min_probability));
    }
    if (best.fit.mse > opts.mse_threshold) {
        throw NumericError(fmt::format("gap fit: initial window MSE {:.4g} exceeds {}", best.fit.mse,
                                       opts.mse_threshold));
    }
    for (std::size_t n = n0 + 1; n <= pts.size(); ++n) {
        const WindowFit next = fit_window(all.first(n), opts);
        if (!next.ok || next.fit.mse > opts.mse_threshold) break;
        best = next;
    }
    return best.fit;
}

double decay_to_gap(double kappa, double i_p, double flux_span) {
    if (!(kappa > 0.0 && i_p > 0.0 && flux_span > 0.0)) {
        throw DomainError("decay_to_gap: kappa, i_p and flux_span must be positive");
    }
    const double eps_span = persistent_current_energy(i_p, flux_span);
    return std::sqrt(kappa * eps_span) / std::numbers::pi;
}

GapFitResult fit_gap(const DecaySeries& series, double i_p, double flux_span,
                     const FitOptions& opts) {
    const ExponentialFit fit = fit_exponential_adaptive(series, opts);
    GapFitResult r;
    r.kappa = fit.kappa;
    r.kappa_stderr = fit.kappa_stderr;
    r.window_max = fit.window_max;
    r.mse = fit.mse;
    r.delta_lz = decay_to_gap(fit.kappa, i_p, flux_span);
    return r;
}

std::string gap_fit_csv(const GapFitResult& r) {
    return fmt::format("kappa_per_ns,delta_lz_GHz,kappa_stderr_per_ns,window_max_ns,mse,residual_space\n"
                       "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},linear\n",
                       r.kappa, r.delta_lz, r.kappa_stderr, r.window_max, r.mse);
}

}  // namespace lzx
