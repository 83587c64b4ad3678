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


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lzx/quadrature.hpp"
#include "lzx/units.hpp"

using namespace lzx;

TEST_CASE("power law across thirteen decades") {
    for (double a : {0.3, 0.91, 1.0, 1.4}) {
        const auto r = integrate_log_partition([a](double x) { return std::pow(x, -a); }, 1e-9, 1e4, 1e-10);
        const double exact = a == 1.0 ? std::log(1e4 / 1e-9)
                                      : (std::pow(1e4, 1 - a) - std::pow(1e-9, 1 - a)) / (1 - a);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
        CHECK(r.segments >= 13);
    }
}

TEST_CASE("Gaussian over breakpoints") {
    const double s = 0.3;
    const std::vector<double> pts{-10, -3 * s, -s, 0, s, 3 * s, 10};
    const auto r = integrate_breakpoints([s](double x) { return std::exp(-x * x / (2 * s * s)); }, pts, 1e-10);
    CHECK(r.value == doctest::Approx(std::sqrt(2 * std::numbers::pi) * s).epsilon(1e-10));
}

TEST_CASE("failures are reported") {
    CHECK_THROWS_AS(integrate_log_partition([](double) { return 1.0; }, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate_log_partition([](double) { return NAN; }, 1.0, 2.0), NumericError);
    const std::vector<double> pts{0.0, 1.0};
    // oscillation far below the finest subdivision
    CHECK_THROWS_AS(integrate_breakpoints([](double x) { return std::sin(1e7 * x) * 1e3; }, pts, 1e-12),
                    NumericError);
}
