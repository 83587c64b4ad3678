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
#include <cstdio>
#include <filesystem>
#include <random>

#include "lzx/device.hpp"

using namespace lzx;

namespace {

SweepSchedule symmetric(double delta, double ip, double t_lz) {
    return SweepSchedule({0.0, delta, ip}, -0.005, 0.005, t_lz);
}

}  // namespace

TEST_CASE("epsilon along the ramp") {
    const auto s = symmetric(0.05, 0.125, 100.0);
    CHECK(s.epsilon_at(50.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.epsilon_at(0.0) == doctest::Approx(-3.9009).epsilon(1e-4));
    CHECK(s.epsilon_at(100.0) == doctest::Approx(3.9009).epsilon(1e-4));
    CHECK_THROWS_AS(s.epsilon_at(-1e-9), DomainError);
    CHECK_THROWS_AS(s.epsilon_at(100.0 + 1e-6), DomainError);

    const SweepSchedule asym({0.0, 0.05, 0.125}, -3.1e-3, 6.9e-3, 200.0);
    CHECK(asym.epsilon_at(200.0) == doctest::Approx(5.3833).epsilon(1e-4));
}

TEST_CASE("epsilon is affine in t") {
    const auto s = symmetric(0.05, 0.11, 37.0);
    const double h = 0.25;
    for (double t = h; t + h <= 37.0; t += 1.3) {
        const double d2 = s.epsilon_at(t + h) - 2.0 * s.epsilon_at(t) + s.epsilon_at(t - h);
        CHECK(std::abs(d2) < 1e-12);
    }
}

TEST_CASE("Hamiltonian limits") {
    const SweepSchedule diag({0.0, 0.0, 0.125}, -0.005, 0.005, 10.0);
    const double e = diag.epsilon_at(0.0);
    const auto h0 = diag.hamiltonian_at(0.0);
    CHECK(h0(0, 0).real() == doctest::Approx(-e / 2));
    CHECK(h0(1, 1).real() == doctest::Approx(e / 2));
    CHECK(std::abs(h0(0, 1)) == 0.0);

    const auto s = symmetric(0.08, 0.125, 10.0);
    const auto hm = s.hamiltonian_at(5.0);
    CHECK(hm(0, 1).real() == doctest::Approx(-0.04));
    const auto ev = hm.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-0.04).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("Hamiltonian is Hermitian and traceless; gap matches the eigensolver") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.005, 0.2), ip(0.09, 0.14), tl(1.0, 1e4), u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto s = symmetric(d(rng), ip(rng), tl(rng));
        const double t = u(rng) * s.t_lz();
        const auto h = s.hamiltonian_at(t);
        CHECK((h.matrix() - h.matrix().adjoint()).norm() < 1e-14);
        CHECK(std::abs(h.trace()) < 1e-14);
        const auto ev = h.eigenvalues();
        CHECK(ev(1) - ev(0) == doctest::Approx(s.gap_at(t)).epsilon(1e-12));
    }
}

TEST_CASE("gap is minimal at the crossing") {
    const SweepSchedule s({0.0, 0.03, 0.12}, -3.1e-3, 6.9e-3, 500.0);
    const double tc = s.crossing_time();
    CHECK(s.epsilon_at(tc) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.gap_at(tc) == doctest::Approx(0.03).epsilon(1e-12));
    for (double t = 0.0; t <= 500.0; t += 7.0) CHECK(s.gap_at(t) >= 0.03 - 1e-15);
}

TEST_CASE("velocity and tau") {
    const auto s = symmetric(0.05, 0.125, 100.0);
    CHECK(s.velocity() == doctest::Approx(0.078019).epsilon(1e-5));
    CHECK(s.velocity() * s.t_lz() == doctest::Approx(s.epsilon_at(100.0) - s.epsilon_at(0.0)).epsilon(1e-14));
    CHECK(s.with_duration(200.0).velocity() == doctest::Approx(s.velocity() / 2));
    CHECK(dimensionless_time(0.05, 0.078019) == doctest::Approx(0.20133).epsilon(1e-4));
    CHECK(s.with_duration(200.0).tau() == doctest::Approx(2 * s.tau()));
    CHECK(dimensionless_time(0.0, 0.1) == 0.0);
    const double t = duration_for_tau({0.0, 0.05, 0.125}, -0.005, 0.005, 1.0);
    CHECK(symmetric(0.05, 0.125, t).tau() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(SweepSchedule({0.0, 0.05, 0.12}, 0.001, 0.005, 10.0), DomainError);
    CHECK_THROWS_AS(SweepSchedule({0.0, 0.05, 0.12}, -0.005, -0.001, 10.0), DomainError);
    CHECK_THROWS_AS(SweepSchedule({0.0, 0.05, 0.12}, -0.005, 0.005, 0.0), DomainError);
    CHECK_THROWS_AS(SweepSchedule({0.0, 0.05, -0.12}, -0.005, 0.005, 1.0), DomainError);
    // endpoint below 10 Delta
    CHECK_THROWS_AS(SweepSchedule({0.0, 0.5, 0.104}, -0.005, 0.005, 1.0), DomainError);
    // between 10 and 50 Delta is accepted
    CHECK_NOTHROW(SweepSchedule({0.0, 0.12, 0.104}, -3.1e-3, 6.9e-3, 1.0));
}

TEST_CASE("operating-point interpolation") {
    const std::vector<OperatingPoint> table{{0.55, 0.012, 0.129}, {0.58, 0.120, 0.104}};
    const auto mid = interpolate_operating_point(table, 0.565);
    CHECK(mid.delta == doctest::Approx(0.037947).epsilon(1e-5));
    CHECK(mid.i_p == doctest::Approx(0.1165).epsilon(1e-12));
    const auto node = interpolate_operating_point(table, 0.58);
    CHECK(node.delta == 0.120);
    CHECK(node.i_p == 0.104);
    CHECK_THROWS_AS(interpolate_operating_point(table, 0.59), std::out_of_range);
    CHECK_THROWS_AS(interpolate_operating_point(table, 0.54), std::out_of_range);

    const std::vector<OperatingPoint> desc{table[1], table[0]};
    CHECK(interpolate_operating_point(desc, 0.565).delta == doctest::Approx(mid.delta).epsilon(1e-14));
}

TEST_CASE("default table spans the quoted ranges") {
    const auto t = default_operating_table();
    REQUIRE(t.size() == 8);
    CHECK_NOTHROW(validate_operating_table(t));
    double dmin = 1, dmax = 0, imin = 1, imax = 0;
    for (const auto& p : t) {
        dmin = std::min(dmin, p.delta);
        dmax = std::max(dmax, p.delta);
        imin = std::min(imin, p.i_p);
        imax = std::max(imax, p.i_p);
    }
    CHECK(dmin == doctest::Approx(0.012));
    CHECK(dmax == doctest::Approx(0.120));
    CHECK(imin == doctest::Approx(0.104));
    CHECK(imax == doctest::Approx(0.129));
    // delta strictly decreases as phi_x decreases
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.phi_x > b.phi_x; });
    for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(sorted[i].delta < sorted[i - 1].delta);
}

TEST_CASE("table file round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "lzx_table_test.csv").string();
    const auto t = default_operating_table();
    write_operating_table(path, t);
    const auto back = read_operating_table(path);
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back[i].phi_x == t[i].phi_x);
        CHECK(back[i].delta == t[i].delta);
        CHECK(back[i].i_p == t[i].i_p);
    }
    std::filesystem::remove(path);
    CHECK_THROWS(read_operating_table(path));
}
