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

#include "lzx/eigenframe.hpp"

#include <cmath>

namespace lzx {

EigenFrame::EigenFrame(double e_ground, double e_excited, const Vec2& ground, const Vec2& excited)
    : e_g_(e_ground), e_e_(e_excited), g_(ground), e_(excited) {}

Mat2 EigenFrame::basis() const {
    Mat2 u;
    u.col(0) = g_;
    u.col(1) = e_;
    return u;
}

cplx EigenFrame::element(const Mat2& op, int a, int b) const {
    const Vec2& va = a == 0 ? g_ : e_;
    const Vec2& vb = b == 0 ? g_ : e_;
    return va.dot(op * vb);
}

Vec2 fix_gauge(const Vec2& v) {
    constexpr double tiny = 1e-300;
    const int k = std::abs(v(0)) > tiny ? 0 : 1;
    const double mag = std::abs(v(k));
    if (mag == 0.0) return v;
    const cplx phase = std::conj(v(k)) / mag;
    Vec2 out = v * phase;
    out(k) = cplx(out(k).real(), 0.0);
    return out;
}

EigenFrame eigenframe(double epsilon_GHz, double delta_GHz) {
    // H = -(E/2)(cos(theta) sz + sin(theta) sx), theta = atan2(Delta, eps) in [0, pi]
    const double gap = std::hypot(epsilon_GHz, delta_GHz);
    const double theta = std::atan2(delta_GHz, epsilon_GHz);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Vec2 ground(c, s);
    const Vec2 excited = fix_gauge(Vec2(-s, c));
    return EigenFrame(-0.5 * gap, 0.5 * gap, ground, excited);
}

EigenFrame eigenframe(const Hermitian2x2& h) {
    const Eigen::Vector2d evals = h.eigenvalues();
    const Mat2 vecs = h.eigenvectors();
    return EigenFrame(evals(0), evals(1), fix_gauge(vecs.col(0)), fix_gauge(vecs.col(1)));
}

}  // namespace lzx
