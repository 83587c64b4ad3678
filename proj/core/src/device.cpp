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

#include "lzx/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <spdlog/spdlog.h>

namespace lzx {

Mat2 sigma_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 sigma_y() {
    Mat2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

Mat2 sigma_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

void OperatingPoint::validate() const {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw DomainError("operating point: delta must be >= 0");
    }
    if (!(i_p > 0.0) || !std::isfinite(i_p)) {
        throw DomainError("operating point: i_p must be > 0");
    }
}

Hermitian2x2::Hermitian2x2(const Mat2& m, double tol) : m_(m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw DomainError("Hermitian2x2: matrix is not Hermitian");
    }
}

Eigen::Vector2d Hermitian2x2::eigenvalues() const {
    const double a = m_(0, 0).real();
    const double d = m_(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(m_(0, 1)));
    return {mean - r, mean + r};
}

Mat2 Hermitian2x2::eigenvectors() const {
    Eigen::SelfAdjointEigenSolver<Mat2> solver;
    solver.computeDirect(m_);
    return solver.eigenvectors();
}

SweepSchedule::SweepSchedule(OperatingPoint point, double phi_init, double phi_final, double t_lz)
    : point_(point), phi_init_(phi_init), phi_final_(phi_final), t_lz_(t_lz) {
    point_.validate();
    if (!(phi_init < 0.0 && phi_final > 0.0)) {
        throw DomainError("sweep schedule: require phi_init < 0 < phi_final");
    }
    if (!(t_lz > 0.0) || !std::isfinite(t_lz)) {
        throw DomainError("sweep schedule: t_lz must be positive");
    }
    const double e0 = std::abs(epsilon_unchecked(0.0));
    const double e1 = std::abs(epsilon_unchecked(t_lz));
    const double emin = std::min(e0, e1);
    if (emin < 10.0 * point_.delta) {
        throw DomainError("sweep schedule: endpoint |epsilon| = " + std::to_string(emin) +
                          " GHz is below 10 Delta");
    }
    if (emin < 50.0 * point_.delta) {
        spdlog::debug("sweep endpoint |epsilon| = {:.4g} GHz is below 50 Delta ({:.4g} GHz)", emin,
                      50.0 * point_.delta);
    }
}

double SweepSchedule::epsilon_unchecked(double t) const {
    const double flux = phi_init_ + (phi_final_ - phi_init_) * (t / t_lz_);
    return persistent_current_energy(point_.i_p, flux);
}

double SweepSchedule::epsilon_at(double t) const {
    if (!(t >= 0.0 && t <= t_lz_)) {
        throw DomainError("epsilon_at: t = " + std::to_string(t) + " ns outside [0, t_lz]");
    }
    return epsilon_unchecked(t);
}

Hermitian2x2 SweepSchedule::hamiltonian_at(double t) const {
    const double eps = epsilon_at(t);
    Mat2 h;
    h << -0.5 * eps, -0.5 * point_.delta, -0.5 * point_.delta, 0.5 * eps;
    return Hermitian2x2(h);
}

double SweepSchedule::velocity() const {
    return persistent_current_energy(point_.i_p, phi_final_ - phi_init_) / t_lz_;
}

double SweepSchedule::tau() const { return dimensionless_time(point_.delta, velocity()); }

double SweepSchedule::gap_at(double t) const { return std::hypot(epsilon_at(t), point_.delta); }

double SweepSchedule::crossing_time() const {
    return t_lz_ * (-phi_init_) / (phi_final_ - phi_init_);
}

double SweepSchedule::max_abs_epsilon() const {
    return std::max(std::abs(epsilon_unchecked(0.0)), std::abs(epsilon_unchecked(t_lz_)));
}

SweepSchedule SweepSchedule::with_duration(double t_lz) const {
    return SweepSchedule(point_, phi_init_, phi_final_, t_lz);
}

double epsilon_at(const SweepSchedule& schedule, double t) { return schedule.epsilon_at(t); }

Hermitian2x2 hamiltonian_at(const SweepSchedule& schedule, double t) {
    return schedule.hamiltonian_at(t);
}

double sweep_velocity(const SweepSchedule& schedule) { return schedule.velocity(); }

double dimensionless_time(const SweepSchedule& schedule) { return schedule.tau(); }

double dimensionless_time(double delta_GHz, double v_GHz_per_ns) {
    if (!(v_GHz_per_ns > 0.0)) {
        throw DomainError("dimensionless_time: velocity must be positive");
    }
    return two_pi * delta_GHz * delta_GHz / v_GHz_per_ns;
}

double duration_for_tau(const OperatingPoint& point, double phi_init, double phi_final,
                        double tau) {
    if (!(tau > 0.0)) throw DomainError("duration_for_tau: tau must be positive");
    const double span = persistent_current_energy(point.i_p, phi_final - phi_init);
    // tau = 2 pi Delta^2 t / span
    return tau * span / (two_pi * point.delta * point.delta);
}

namespace {

std::vector<OperatingPoint> sorted_ascending(std::span<const OperatingPoint> table) {
    std::vector<OperatingPoint> rows(table.begin(), table.end());
    std::sort(rows.begin(), rows.end(),
              [](const OperatingPoint& a, const OperatingPoint& b) { return a.phi_x < b.phi_x; });
    return rows;
}

}  // namespace

void validate_operating_table(std::span<const OperatingPoint> table) {
    if (table.size() < 2) throw DomainError("operating table: need at least 2 rows");
    const auto rows = sorted_ascending(table);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].delta > 0.0) || !(rows[i].i_p > 0.0)) {
            throw DomainError("operating table: delta and i_p must be positive");
        }
        if (i > 0) {
            if (!(rows[i].phi_x > rows[i - 1].phi_x)) {
                throw DomainError("operating table: duplicate phi_x");
            }
            if (!(rows[i].delta > rows[i - 1].delta)) {
                throw DomainError("operating table: delta must decrease with decreasing phi_x");
            }
        }
    }
}

OperatingPoint interpolate_operating_point(std::span<const OperatingPoint> table, double phi_x) {
    if (table.size() < 2) throw DomainError("interpolate_operating_point: need >= 2 rows");
    const auto rows = sorted_ascending(table);
    if (phi_x < rows.front().phi_x || phi_x > rows.back().phi_x) {
        throw std::out_of_range("interpolate_operating_point: phi_x = " + std::to_string(phi_x) +
                                " outside table range");
    }
    auto hi = std::lower_bound(rows.begin(), rows.end(), phi_x,
                               [](const OperatingPoint& p, double x) { return p.phi_x < x; });
    if (hi->phi_x == phi_x) return *hi;
    auto lo = hi - 1;
    const double w = (phi_x - lo->phi_x) / (hi->phi_x - lo->phi_x);
    OperatingPoint out;
    out.phi_x = phi_x;
    out.delta = std::exp((1.0 - w) * std::log(lo->delta) + w * std::log(hi->delta));
    out.i_p = (1.0 - w) * lo->i_p + w * hi->i_p;
    return out;
}

std::vector<OperatingPoint> default_operating_table() {
    constexpr int n = 8;
    std::vector<OperatingPoint> table;
    table.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double frac = static_cast<double>(k) / (n - 1);
        OperatingPoint p;
        p.phi_x = 0.580 - 0.005 * k;
        p.delta = 0.120 * std::pow(0.012 / 0.120, frac);
        p.i_p = 0.104 + (0.129 - 0.104) * frac;
        table.push_back(p);
    }
    return table;
}

std::vector<OperatingPoint> read_operating_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open operating table '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("operating table '" + path + "' is empty");
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line != "phi_x,delta_GHz,ip_uA") {
        throw std::runtime_error("operating table '" + path +
                                 "': expected header phi_x,delta_GHz,ip_uA");
    }
    std::vector<OperatingPoint> table;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        OperatingPoint p;
        if (!(fields >> p.phi_x >> p.delta >> p.i_p)) {
            throw std::runtime_error("operating table '" + path + "': bad row at line " +
                                     std::to_string(lineno));
        }
        table.push_back(p);
    }
    validate_operating_table(table);
    return table;
}

void write_operating_table(const std::string& path, std::span<const OperatingPoint> table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write operating table '" + path + "'");
    out.precision(17);
    out << "phi_x,delta_GHz,ip_uA\n";
    for (const auto& p : table) out << p.phi_x << ',' << p.delta << ',' << p.i_p << '\n';
}

}  // namespace lzx
