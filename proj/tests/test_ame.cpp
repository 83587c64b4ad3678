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
#include <random>

#include <Eigen/Eigenvalues>

#include "lzx/ame.hpp"
#include "lzx/coherent.hpp"

using namespace lzx;

namespace {

const OperatingPoint point{0.55, 0.05, 0.12};

DensityMatrix random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat2 a;
    a << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
    const Mat2 r = a * a.adjoint();
    return DensityMatrix(r / r.trace());
}

Mat2 hamiltonian_ang(double eps, double delta) {
    Mat2 h;
    h << -0.5 * eps, -0.5 * delta, -0.5 * delta, 0.5 * eps;
    return two_pi * h;
}

NoiseModel silent() {
    NoiseModel m = NoiseModel::nominal();
    m.a_star = 0.0;
    m.b = 0.0;
    return m;
}

SweepSchedule sweep(double t_lz) {
    return SweepSchedule(point, -0.004, 0.004, t_lz);
}

}  // namespace

TEST_CASE("density matrix invariants") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed());
    Mat2 bad_trace = Mat2::Identity();
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, DomainError);
    Mat2 not_herm = Mat2::Identity() * 0.5;
    not_herm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, DomainError);
    Mat2 negative;
    negative << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix{negative}, DomainError);

    std::mt19937_64 rng(1);
    const auto rho = random_state(rng);
    CHECK(rho.min_eigenvalue() >= 0.0);
    const auto back = DensityMatrix::unpack(rho.pack());
    CHECK((back.matrix() - rho.matrix()).norm() == 0.0);
    const auto p = DensityMatrix::projector(Vec2(cplx(1, 1), cplx(0, 2)));
    CHECK(p.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.trace() == doctest::Approx(1.0));
}

TEST_CASE("eigenframe") {
    const auto f0 = eigenframe(0.0, 0.3);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(f0.ground()(i)) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(f0.excited()(i)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    CHECK(std::abs(f0.element(sigma_z(), 0, 1)) == doctest::Approx(1.0).epsilon(1e-14));

    // eps > 0 with Delta -> 0: H = -(eps/2) sz, ground state is |0>
    const auto fd = eigenframe(2.0, 1e-12);
    CHECK(std::norm(fd.ground()(0)) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double eps = u(rng), delta = std::abs(u(rng)) + 1e-3;
        const auto f = eigenframe(eps, delta);
        CHECK(f.gap() == doctest::Approx(std::hypot(eps, delta)).epsilon(1e-12));
        Eigen::SelfAdjointEigenSolver<Mat2> es(hamiltonian_ang(eps, delta) / two_pi);
        CHECK(f.energy_ground() == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
        CHECK(std::abs(es.eigenvectors().col(0).dot(f.ground())) == doctest::Approx(1.0).epsilon(1e-12));
        for (const Vec2* v : {&f.ground(), &f.excited()}) {
            const int k = std::abs((*v)(0)) > 1e-300 ? 0 : 1;
            CHECK((*v)(k).imag() == 0.0);
            CHECK((*v)(k).real() > 0.0);
        }
        const double gg = f.element(sigma_z(), 0, 0).real();
        CHECK(gg * gg + std::norm(f.element(sigma_z(), 0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Lindblad operators") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double eps = u(rng);
        const auto f = eigenframe(eps, 0.05);
        const auto set = lindblad_set(point, f);
        CHECK((set.sum() - point.i_p * sigma_z()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((set.terms[2].op - set.terms[1].op.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(set.terms[1].omega == doctest::Approx(f.gap()));
        CHECK(set.terms[2].omega == doctest::Approx(-f.gap()));
        CHECK(set.terms[0].omega == 0.0);
    }

    const auto at_zero = lindblad_set(point, eigenframe(0.0, 0.05));
    CHECK(at_zero.terms[0].op.cwiseAbs().maxCoeff() < 1e-15);
    const auto fz = eigenframe(0.0, 0.05);
    const Mat2 in_eig = fz.basis().adjoint() * at_zero.terms[1].op * fz.basis();
    CHECK(std::abs(in_eig(0, 1)) == doctest::Approx(point.i_p).epsilon(1e-14));

    // far from the crossing: dephasing ~ I_p, transitions ~ I_p Delta/|eps|
    const double eps = 500.0 * 0.05;
    const auto ff = eigenframe(eps, 0.05);
    const auto far = lindblad_set(point, ff);
    const Mat2 d = ff.basis().adjoint() * far.terms[0].op * ff.basis();
    CHECK(std::abs(d(0, 0)) == doctest::Approx(point.i_p).epsilon(1e-5));
    const Mat2 o = ff.basis().adjoint() * far.terms[1].op * ff.basis();
    CHECK(std::abs(o(0, 1)) == doctest::Approx(point.i_p * 0.05 / eps).epsilon(1e-4));
}

TEST_CASE("AME generator") {
    const NoiseSpectrum spec(NoiseModel::nominal());
    const auto psd = [&](double w) { return spec.ame(w); };
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto rho = random_state(rng);
        const double eps = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const Mat2 d = AmeGenerator::rhs(rho.matrix(), eps, point, psd);
        CHECK(std::abs(d.trace()) < 1e-12);
        CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

        const Mat2 h = hamiltonian_ang(eps, point.delta);
        const Mat2 closed = cplx(0, -1) * (h * rho.matrix() - rho.matrix() * h);
        const Mat2 d0 = AmeGenerator::rhs(rho.matrix(), eps, point, [](double) { return 0.0; });
        CHECK((d0 - closed).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("maximally mixed state at the symmetry point") {
    // Direct arithmetic: only |g><e| and |e><g| act at eps = 0, so
    // d rho_ee / dt = (G_up - G_down) / 2 in the eigenbasis.
    const NoiseSpectrum spec(NoiseModel::nominal());
    const auto psd = [&](double w) { return spec.ame(w); };
    const Mat2 mixed = Mat2::Identity() * 0.5;
    const Mat2 d = AmeGenerator::rhs(mixed, 0.0, point, psd);
    const auto f = eigenframe(0.0, point.delta);
    const Mat2 de = f.basis().adjoint() * d * f.basis();
    const double k = std::pow(two_pi * PhysConstants::current_to_freq * point.i_p, 2);
    const double w = two_pi * point.delta;
    const double down = k * spec.ame(w), up = k * spec.ame(-w);
    CHECK(de(1, 1).real() == doctest::Approx(0.5 * (up - down)).epsilon(1e-12));
    CHECK(de(0, 0).real() == doctest::Approx(0.5 * (down - up)).epsilon(1e-12));
    CHECK(std::abs(de(0, 1)) < 1e-12 * down);
    CHECK(de(1, 1).real() < 0.0);
}

TEST_CASE("ame_rhs wrapper") {
    const auto s = sweep(100.0);
    const auto d = ame_rhs(DensityMatrix::maximally_mixed(), 50.0, s, NoiseModel::nominal());
    CHECK(std::abs(d.matrix().trace()) < 1e-12);
    CHECK_THROWS_AS(ame_rhs(DensityMatrix::maximally_mixed(), 101.0, s, NoiseModel::nominal()), DomainError);
}

TEST_CASE("static Hamiltonian relaxes to the Gibbs state") {
    const OperatingPoint p{0.5, 1.0, 0.12};
    const auto noise = NoiseModel::nominal();
    const Drive probe = Drive::constant(p, 0.0, 1.0);
    const auto [down, up] = AmeGenerator(probe, noise).transition_rates(0.0);
    REQUIRE(down > 0.0);
    CHECK(up / down == doctest::Approx(0.090745).epsilon(1e-4));

    const double t_relax = 1.0 / (down + up);
    const auto drive = Drive::constant(p, 0.0, 12.0 * t_relax);
    const auto f = eigenframe(0.0, 1.0);
    SolverOptions opts;
    opts.rtol = 1e-8;
    opts.atol = 1e-10;
    const auto r = evolve_ame(drive, noise, DensityMatrix::projector(f.excited()), opts);
    MESSAGE("relaxation time " << t_relax << " ns, p_e = " << r.p_e);
    CHECK(std::abs(r.p_e - 0.083195) < 5e-3);
    CHECK(r.p_e / r.p_g == doctest::Approx(std::exp(-1.0 / 0.41673)).epsilon(0.07));
}

TEST_CASE("closed-system limit matches the Schrodinger solution") {
    for (double t_lz : {20.0, 80.0, 300.0}) {
        const auto s = sweep(t_lz);
        SolverOptions opts;
        opts.rtol = 1e-12;
        opts.atol = 1e-14;
        const auto a = evolve_ame(s, silent(), opts);
        const auto c = evolve_schrodinger(s);
        CHECK(std::abs(a.p_e - c.populations.p_e) < 1e-6);
        CHECK(std::abs(a.p_g - c.populations.p_g) < 1e-6);
    }
}

TEST_CASE("trace and Hermiticity are conserved") {
    SolverOptions opts;
    opts.rtol = 1e-8;
    opts.atol = 1e-10;
    opts.sample_stride = 25.0;
    const auto r = evolve_ame(sweep(1000.0), NoiseModel::nominal(), opts);
    CHECK(r.max_trace_drift < 1e-9);
    CHECK(r.max_hermiticity_drift < 1e-9);
    CHECK(r.min_eigenvalue > -1e-7);
    CHECK(r.p_g + r.p_e == doctest::Approx(1.0));
    CHECK_FALSE(r.used_coarse_tail);

    REQUIRE(r.trajectory.size() == 41);
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
        CHECK(r.trajectory[i].t == doctest::Approx(25.0 * i).epsilon(1e-12));
        CHECK(r.trajectory[i].p_g + r.trajectory[i].p_e == doctest::Approx(1.0));
    }
    CHECK(r.trajectory.front().p_g == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.trajectory.back().p_g == doctest::Approx(r.p_g).epsilon(1e-15));
}

TEST_CASE("coarse tail is optional and close to the full solution") {
    const SweepSchedule s(point, -0.004, 0.004, 6000.0);
    SolverOptions opts;
    opts.rtol = 1e-8;
    opts.atol = 1e-10;
    const auto full = evolve_ame(s, NoiseModel::nominal(), opts);
    opts.coarse_tail = true;
    const auto coarse = evolve_ame(s, NoiseModel::nominal(), opts);
    CHECK(coarse.used_coarse_tail);
    CHECK(std::abs(coarse.p_g - full.p_g) < 0.02);
}

TEST_CASE("positivity violation raises a numeric error") {
    Mat2 m;
    m << 1.001, 0.0, 0.0, -0.001;
    CHECK_THROWS_AS(evolve_ame(Drive::from_schedule(sweep(10.0)), NoiseModel::nominal(),
                               DensityMatrix::unchecked(m)),
                    NumericError);
}

TEST_CASE("readout clips small negative populations") {
    Mat2 m;
    m << 1.0 + 1e-9, 0.0, 0.0, -1e-9;
    const auto s = readout(m, 50.0, 0.05, 0.0);
    CHECK(s.p_e >= 0.0);
    CHECK(s.p_g <= 1.0);
    CHECK(s.p_g + s.p_e == doctest::Approx(1.0).epsilon(1e-15));
}
