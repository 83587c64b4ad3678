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

// gap_fit.hpp: exponential fit of short-sweep P_e(T_LZ) data and effective gap

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lzx {

/// Raised when a fit window holds too few usable points.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DecayPoint {
    double t_lz{0.0};  // ns
    double p_e{0.0};
};

/// (t_lz, p_e) pairs with strictly increasing t_lz and 0 <= p_e <= 1.
class DecaySeries {
public:
    DecaySeries() = default;
    explicit DecaySeries(std::vector<DecayPoint> points);

    const std::vector<DecayPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// Reads a `t_lz_ns,p_e` CSV file.
    static DecaySeries read_csv(const std::string& path);

private:
    std::vector<DecayPoint> points_;
};

struct FitOptions {
    double initial_window{30.0};  // ns
    double mse_threshold{0.01};
    double min_probability{1e-3};  // points below are excluded from the log fit
};

struct ExponentialFit {
    double kappa{0.0};         // 1/ns
    double kappa_stderr{0.0};  // 1/ns
    double window_max{0.0};    // ns
    double mse{0.0};
    std::size_t points_used{0};
};

/// Fits p_e = exp(-kappa t) on a window that starts at [0, initial_window] and
/// grows one point at a time while the linear-space MSE stays below the
/// threshold. Weighted least squares on log p_e with weights p_e^2.
ExponentialFit fit_exponential_adaptive(const DecaySeries& series, const FitOptions& opts = {});

/// Effective gap (GHz) from kappa = pi^2 Delta^2 / eps_span, where
/// eps_span = 2 I_p (Phi0/h) flux_span.
double decay_to_gap(double kappa, double i_p, double flux_span);

struct GapFitResult {
    double kappa{0.0};
    double delta_lz{0.0};
    double kappa_stderr{0.0};
    double window_max{0.0};
    double mse{0.0};
};

GapFitResult fit_gap(const DecaySeries& series, double i_p, double flux_span,
                     const FitOptions& opts = {});

/// One header line and one data row.
std::string gap_fit_csv(const GapFitResult& result);

}  // namespace lzx
