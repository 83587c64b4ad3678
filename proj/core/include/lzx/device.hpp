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

// device.hpp: two-level flux-qubit model and linear flux sweep schedules

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lzx/units.hpp"

namespace lzx {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// Pauli matrices in the persistent-current basis, sigma_z = diag(+1, -1).
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

/// Two-level model at one (Phi_x) bias point.
struct OperatingPoint {
    double phi_x{0.0};  // Phi0
    double delta{0.0};  // GHz, minimum gap Delta/h
    double i_p{0.0};    // uA, persistent current

    /// Throws DomainError unless delta >= 0 and i_p > 0.
    void validate() const;
};

/// A 2x2 complex matrix with a Hermiticity contract. Entries are in GHz when
/// it holds a Hamiltonian.
class Hermitian2x2 {
public:
    Hermitian2x2() = default;
    /// Throws DomainError if m deviates from its adjoint by more than tol.
    explicit Hermitian2x2(const Mat2& m, double tol = 1e-14);

    const Mat2& matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }
    double trace() const { return (m_(0, 0) + m_(1, 1)).real(); }

    /// Eigenvalues in ascending order.
    Eigen::Vector2d eigenvalues() const;
    /// Columns are eigenvectors ordered like eigenvalues().
    Mat2 eigenvectors() const;

private:
    Mat2 m_ = Mat2::Zero();
};

/// Linear Phi_z ramp, expressed as flux offsets from the symmetry point.
class SweepSchedule {
public:
    /// Validates phi_init < 0 < phi_final, t_lz > 0 and the |epsilon| >= 10 Delta
    /// endpoint guard; logs a warning when an endpoint sits below 50 Delta.
    SweepSchedule(OperatingPoint point, double phi_init, double phi_final, double t_lz);

    const OperatingPoint& point() const { return point_; }
    double phi_init() const { return phi_init_; }
    double phi_final() const { return phi_final_; }
    double t_lz() const { return t_lz_; }

    /// Diabatic detuning epsilon(t) in GHz; t must lie in [0, t_lz].
    double epsilon_at(double t) const;
    /// -(eps/2) sigma_z - (Delta/2) sigma_x in GHz.
    Hermitian2x2 hamiltonian_at(double t) const;
    /// d epsilon / dt in GHz/ns.
    double velocity() const;
    /// tau = Delta^2 / (hbar v) = 2 pi Delta^2 / v in h-based units.
    double tau() const;
    /// Instantaneous gap sqrt(eps^2 + Delta^2) in GHz.
    double gap_at(double t) const;
    /// Time at which epsilon crosses zero.
    double crossing_time() const;
    /// Largest |epsilon| reached over the sweep, GHz.
    double max_abs_epsilon() const;

    /// Same sweep with a different duration.
    SweepSchedule with_duration(double t_lz) const;

private:
    double epsilon_unchecked(double t) const;

    OperatingPoint point_;
    double phi_init_;
    double phi_final_;
    double t_lz_;
};

double epsilon_at(const SweepSchedule& schedule, double t);
Hermitian2x2 hamiltonian_at(const SweepSchedule& schedule, double t);
double sweep_velocity(const SweepSchedule& schedule);
double dimensionless_time(const SweepSchedule& schedule);
/// tau for explicit (Delta, v), both in GHz-based units.
double dimensionless_time(double delta_GHz, double v_GHz_per_ns);

/// Sweep duration that yields the requested tau for the given endpoints.
double duration_for_tau(const OperatingPoint& point, double phi_init, double phi_final,
                        double tau);

/// Log-linear interpolation of Delta and linear interpolation of I_p in phi_x.
/// The table may be sorted ascending or descending; throws std::out_of_range
/// for requests outside the tabulated span.
OperatingPoint interpolate_operating_point(std::span<const OperatingPoint> table, double phi_x);

/// Checks table invariants: >= 2 rows, positive entries, distinct phi_x and
/// Delta strictly decreasing with decreasing phi_x.
void validate_operating_table(std::span<const OperatingPoint> table);

/// Eight synthetic nodes: Delta/h log-spaced 0.120 -> 0.012 GHz and I_p
/// linear 0.104 -> 0.129 uA as phi_x decreases.
std::vector<OperatingPoint> default_operating_table();

/// Reads `phi_x,delta_GHz,ip_uA` rows.
std::vector<OperatingPoint> read_operating_table(const std::string& path);
void write_operating_table(const std::string& path, std::span<const OperatingPoint> table);

}  // namespace lzx
