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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "lzx/coherent.hpp"
#include "lzx/gap_fit.hpp"

using namespace lzx;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> linear_grid(double t0, double dt, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t0 + dt * i;
    return t;
}

DecaySeries exponential(double kappa, const std::vector<double>& ts) {
    std::vector<DecayPoint> pts;
    for (double t : ts) pts.push_back({t, std::exp(-kappa * t)});
    return DecaySeries(pts);
}

// Coherent-limit series: P_e = P_LZ for a linear sweep across eps_span in t_lz.
DecaySeries coherent_series(double delta, double ip, double flux_span, const std::vector<double>& ts) {
    const double eps_span = 2.0 * ip * (2.067833848e-15 / 6.62607015e-34 * 1e-15) * flux_span;
    std::vector<DecayPoint> pts;
    for (double t : ts) pts.push_back({t, p_lz(delta, eps_span / t)});
    return DecaySeries(pts);
}

}  // namespace

TEST_CASE("decay series invariants") {
    CHECK_THROWS_AS(DecaySeries({{1.0, 0.5}, {1.0, 0.4}}), DomainError);
    CHECK_THROWS_AS(DecaySeries({{1.0, 0.5}, {0.5, 0.4}}), DomainError);
    CHECK_THROWS_AS(DecaySeries({{1.0, 1.5}}), DomainError);
    CHECK_THROWS_AS(DecaySeries({{1.0, -0.1}}), DomainError);
    CHECK_NOTHROW(DecaySeries({{1.0, 1.0}, {2.0, 0.0}}));
}

TEST_CASE("noiseless exponential") {
    const auto ts = linear_grid(2.0, 4.0, 75);
    const auto fit = fit_exponential_adaptive(exponential(0.02, ts));
    CHECK(fit.kappa == doctest::Approx(0.02).epsilon(1e-6 / 0.02));
    CHECK(fit.window_max == ts.back());
    CHECK(fit.mse < 1e-20);
    CHECK(fit.kappa_stderr < 1e-12);
}

TEST_CASE("noisy exponential over 100 seeds") {
    // A 3-sigma bound misses ~0.3% of draws for a calibrated estimator, so the
    // Monte Carlo checks the miss count and the z-score moments.
    const auto ts = linear_grid(2.0, 4.0, 75);
    int within = 0;
    double sum_z = 0.0, sum_z2 = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, 0.01);
        std::vector<DecayPoint> pts;
        for (double t : ts) pts.push_back({t, std::clamp(std::exp(-0.02 * t) + noise(rng), 0.0, 1.0)});
        const auto fit = fit_exponential_adaptive(DecaySeries(pts));
        CHECK(fit.mse <= 0.01);
        const double z = (fit.kappa - 0.02) / fit.kappa_stderr;
        sum_z += z;
        sum_z2 += z * z;
        if (std::abs(z) <= 3.0) ++within;
    }
    const double mean = sum_z / 100.0, rms = std::sqrt(sum_z2 / 100.0);
    MESSAGE(within << "/100 within 3 stderr; z mean " << mean << ", rms " << rms);
    CHECK(within >= 97);
    CHECK(std::abs(mean) < 0.5);
    CHECK(rms > 0.75);
    CHECK(rms < 1.3);
}

TEST_CASE("thermalisation plateau truncates the window") {
    std::vector<DecayPoint> pts;
    for (double t : linear_grid(5.0, 10.0, 50)) pts.push_back({t, t <= 200.0 ? std::exp(-0.02 * t) : 0.5});
    const auto fit = fit_exponential_adaptive(DecaySeries(pts));
    CHECK(fit.window_max < 200.0);
    CHECK(fit.mse <= 0.01);
    CHECK(fit.kappa == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("insufficient data") {
    CHECK_THROWS_AS(fit_exponential_adaptive(exponential(0.02, {10.0, 20.0, 40.0, 80.0})), InsufficientDataError);
    CHECK_THROWS_AS(fit_exponential_adaptive(DecaySeries{}), InsufficientDataError);
    // initial window entirely below the probability floor
    CHECK_THROWS_AS(fit_exponential_adaptive(exponential(5.0, {5.0, 10.0, 20.0})), InsufficientDataError);
}

TEST_CASE("gap conversion") {
    const double eps_span = 2.0 * 0.115 * 3120.75 * 0.01;
    CHECK(decay_to_gap(0.02, 0.115, 0.01) == doctest::Approx(std::sqrt(0.02 * eps_span / (pi * pi))).epsilon(1e-5));
    const double d = decay_to_gap(0.02, 0.115, 0.01);
    CHECK(decay_to_gap(0.08, 0.115, 0.01) == doctest::Approx(2.0 * d).epsilon(1e-14));
    CHECK(decay_to_gap(0.02, 0.115, 0.02) == doctest::Approx(std::sqrt(2.0) * d).epsilon(1e-14));
    CHECK_THROWS_AS(decay_to_gap(0.0, 0.1, 0.01), DomainError);
    CHECK_THROWS_AS(decay_to_gap(0.02, -0.1, 0.01), DomainError);
}

TEST_CASE("round trip through the coherent formula") {
    const auto ts = linear_grid(2.0, 2.0, 100);
    for (double delta : {0.01, 0.05, 0.115}) {
        const auto r = fit_gap(coherent_series(delta, 0.115, 0.01, ts), 0.115, 0.01);
        CHECK(r.delta_lz == doctest::Approx(delta).epsilon(0.01));
        CHECK(r.mse <= 0.01);
        CHECK(r.delta_lz > 0.0);
    }
}

TEST_CASE("fit is scale equivariant") {
    const auto ts = linear_grid(2.0, 4.0, 75);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<DecayPoint> a, b;
    for (double t : ts) {
        const double p = std::clamp(std::exp(-0.02 * t) + noise(rng), 0.0, 1.0);
        a.push_back({t, p});
        b.push_back({3.0 * t, p});
    }
    FitOptions scaled;
    scaled.initial_window *= 3.0;
    const auto fa = fit_exponential_adaptive(DecaySeries(a));
    const auto fb = fit_exponential_adaptive(DecaySeries(b), scaled);
    CHECK(fb.kappa == doctest::Approx(fa.kappa / 3.0).epsilon(1e-13));
    CHECK(fb.window_max == doctest::Approx(3.0 * fa.window_max));
}

TEST_CASE("CSV input and output") {
    const auto path = std::filesystem::temp_directory_path() / "lzx_gap_fit_series.csv";
    {
        std::ofstream out(path);
        out << "t_lz_ns,p_e\n";
        for (double t : linear_grid(2.0, 4.0, 40)) out << t << "," << std::exp(-0.01 * t) << "\n";
    }
    const auto series = DecaySeries::read_csv(path.string());
    CHECK(series.size() == 40);
    const auto r = fit_gap(series, 0.12, 0.008);
    CHECK(r.kappa == doctest::Approx(0.01).epsilon(1e-5));
    const std::string csv = gap_fit_csv(r);
    CHECK(csv.rfind("kappa_per_ns,delta_lz_GHz,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    {
        std::ofstream out(path);
        out << "time,p\n1,0.5\n";
    }
    CHECK_THROWS(DecaySeries::read_csv(path.string()));
    std::filesystem::remove(path);
    CHECK_THROWS(DecaySeries::read_csv(path.string()));
}
