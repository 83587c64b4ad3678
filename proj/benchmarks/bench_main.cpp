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


#include <benchmark/benchmark.h>

#include "lzx/ame.hpp"
#include "lzx/coherent.hpp"
#include "lzx/noise.hpp"
#include "lzx/ptre.hpp"

using namespace lzx;

namespace {

const NoiseModel nominal = NoiseModel::nominal();
constexpr double ip = 0.129;
const OperatingPoint point{0.566, 0.012, ip};

void BM_PsdAme(benchmark::State& state) {
    const NoiseSpectrum s(nominal);
    double w = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.ame(w));
        w = w < 100.0 ? w * 1.01 : 0.01;
    }
}
BENCHMARK(BM_PsdAme);

void BM_MrtParams(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mrt_params_fdt(nominal, ip));
}
BENCHMARK(BM_MrtParams)->Unit(benchmark::kMicrosecond);

void BM_AmeRhs(benchmark::State& state) {
    const SweepSchedule s(point, -0.004, 0.004, 1000.0);
    DensityMatrix rho = DensityMatrix::maximally_mixed();
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ame_rhs(rho, t, s, nominal));
        t = t + 0.37 < 1000.0 ? t + 0.37 : 0.0;
    }
}
BENCHMARK(BM_AmeRhs);

void BM_PolaronPsd(benchmark::State& state) {
    const MrtParams m = mrt_params_fdt(nominal, ip);
    for (auto _ : state) benchmark::DoNotOptimize(polaron_psd(m, nominal, ip, 1.0));
}
BENCHMARK(BM_PolaronPsd)->Unit(benchmark::kMicrosecond);

void BM_PolaronSpectrumBuild(benchmark::State& state) {
    const MrtParams m = mrt_params_fdt(nominal, ip);
    for (auto _ : state) {
        PolaronSpectrum s(m, nominal, ip, 4.0);
        benchmark::DoNotOptimize(s.values().data());
    }
}
BENCHMARK(BM_PolaronSpectrumBuild)->Unit(benchmark::kMillisecond);

void BM_EvolveSchrodinger(benchmark::State& state) {
    const SweepSchedule s(point, -0.004, 0.004, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evolve_schrodinger(s).populations.p_e);
}
BENCHMARK(BM_EvolveSchrodinger)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EvolveAme(benchmark::State& state) {
    const SweepSchedule s(point, -0.004, 0.004, static_cast<double>(state.range(0)));
    SolverOptions opts;
    opts.rtol = 1e-8;
    opts.atol = 1e-10;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_ame(s, nominal, opts).p_g);
}
BENCHMARK(BM_EvolveAme)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EvolvePtre(benchmark::State& state) {
    const SweepSchedule s(point, -0.004, 0.004, static_cast<double>(state.range(0)));
    const PolaronSpectrum spectrum(mrt_params_fdt(nominal, ip), nominal, ip, s.max_abs_epsilon());
    for (auto _ : state) benchmark::DoNotOptimize(evolve_ptre(s, spectrum).p_g);
}
BENCHMARK(BM_EvolvePtre)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
