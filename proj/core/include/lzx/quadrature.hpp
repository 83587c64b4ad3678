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

// quadrature.hpp: adaptive Gauss-Kronrod over partitioned intervals

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lzx {

struct QuadratureResult {
    double value{0.0};
    double abs_error{0.0};
    int segments{0};
};

/// Integrates f over [a, b] (0 < a < b) by substituting x = exp(u) and running
/// adaptive Gauss-Kronrod on a log-spaced partition with `per_decade` segments
/// per decade. Throws NumericError when the estimated error exceeds rel_tol by
/// more than a factor of 100.
QuadratureResult integrate_log_partition(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol = 1e-8, int per_decade = 1);

/// Integrates f over consecutive intervals between sorted breakpoints.
QuadratureResult integrate_breakpoints(const std::function<double(double)>& f,
                                       std::span<const double> breakpoints,
                                       double rel_tol = 1e-8);

}  // namespace lzx
