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

#include "lzx/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lzx/units.hpp"

namespace lzx {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned max_depth = 12;
// The Kronrod error estimate has a roundoff floor near 1e-10 relative on
// narrow segments; tolerances below it are treated as this floor.
constexpr double accept_floor = 1e-7;

[[noreturn]] void fail(double a, double b, double value, double err, double rel_tol) {
    std::ostringstream os;
    os.precision(6);
    os << "quadrature did not converge on [" << a << ", " << b << "]: value " << value
       << ", error estimate " << err << " vs relative tolerance " << rel_tol;
    throw NumericError(os.str());
}

void check(const QuadratureResult& r, double a, double b, double l1, double rel_tol) {
    if (!std::isfinite(r.value)) fail(a, b, r.value, r.abs_error, rel_tol);
    if (r.abs_error > std::max(100.0 * rel_tol, accept_floor) * std::max(l1, 1e-300) &&
        r.abs_error > 1e-300) {
        fail(a, b, r.value, r.abs_error, rel_tol);
    }
}

}  // namespace

QuadratureResult integrate_log_partition(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol, int per_decade) {
    if (!(a > 0.0 && b > a)) throw DomainError("integrate_log_partition: need 0 < a < b");
    const double ua = std::log(a);
    const double ub = std::log(b);
    const int n = std::max(1, static_cast<int>(std::ceil((ub - ua) / std::log(10.0) * per_decade)));
    const double du = (ub - ua) / n;
    auto g = [&](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    QuadratureResult total;
    double l1_total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lo = ua + i * du;
        const double hi = (i + 1 == n) ? ub : ua + (i + 1) * du;
        double err = 0.0;
        double l1 = 0.0;
        total.value += GK::integrate(g, lo, hi, max_depth, rel_tol, &err, &l1);
        total.abs_error += err;
        l1_total += l1;
        ++total.segments;
    }
    check(total, a, b, l1_total, rel_tol);
    return total;
}

QuadratureResult integrate_breakpoints(const std::function<double(double)>& f,
                                       std::span<const double> breakpoints, double rel_tol) {
    QuadratureResult total;
    double l1_total = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double lo = breakpoints[i - 1];
        const double hi = breakpoints[i];
        if (!(hi > lo)) continue;
        double err = 0.0;
        double l1 = 0.0;
        total.value += GK::integrate(f, lo, hi, max_depth, rel_tol, &err, &l1);
        total.abs_error += err;
        l1_total += l1;
        ++total.segments;
    }
    if (!breakpoints.empty()) check(total, breakpoints.front(), breakpoints.back(), l1_total, rel_tol);
    return total;
}

}  // namespace lzx
