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

// eigenframe.hpp: closed-form instantaneous eigenbasis of the qubit Hamiltonian

#pragma once

#include <array>

#include "lzx/device.hpp"

namespace lzx {

/// Energies (GHz) and eigenvectors with a fixed gauge: the first nonzero
/// component of each eigenvector is real and positive.
class EigenFrame {
public:
    EigenFrame(double e_ground, double e_excited, const Vec2& ground, const Vec2& excited);

    double energy_ground() const { return e_g_; }
    double energy_excited() const { return e_e_; }
    double gap() const { return e_e_ - e_g_; }
    const Vec2& ground() const { return g_; }
    const Vec2& excited() const { return e_; }
    /// Unitary whose columns are (ground, excited).
    Mat2 basis() const;
    /// Bohr frequencies {0, +gap, -gap} in GHz.
    std::array<double, 3> bohr_frequencies() const { return {0.0, gap(), -gap()}; }

    /// <a|op|b> with a, b in {0 = ground, 1 = excited}.
    cplx element(const Mat2& op, int a, int b) const;

private:
    double e_g_;
    double e_e_;
    Vec2 g_;
    Vec2 e_;
};

/// Applies the gauge rule to a single vector.
Vec2 fix_gauge(const Vec2& v);

/// Closed form for -(eps/2) sigma_z - (Delta/2) sigma_x, continuous in eps.
EigenFrame eigenframe(double epsilon_GHz, double delta_GHz);
/// General 2x2 Hermitian input.
EigenFrame eigenframe(const Hermitian2x2& h);

}  // namespace lzx
