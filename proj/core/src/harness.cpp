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

#include "lzx/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "lzx/ame.hpp"
#include "lzx/coherent.hpp"
#include "lzx/config.hpp"
#include "lzx/ptre.hpp"

namespace lzx {

std::string to_string(Method m) {
    switch (m) {
        case Method::coherent: return "coherent";
        case Method::schrodinger: return "schrodinger";
        case Method::ame: return "ame";
        case Method::ptre: return "ptre";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::coherent, Method::schrodinger, Method::ame, Method::ptre}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::string PtreVariant::tag() const {
    if (w_scale == 1.0 && t_scale == 1.0) return "ptre";
    return fmt::format("ptre_w{:g}_t{:g}", w_scale, t_scale);
}

std::vector<double> TimeGrid::values() const {
    std::vector<double> out;
    if (count == 1) return {min_ns};
    out.reserve(static_cast<std::size_t>(count));
    const double ratio = std::log(max_ns / min_ns);
    for (int i = 0; i < count; ++i) {
        out.push_back(i + 1 == count ? max_ns : min_ns * std::exp(ratio * i / (count - 1)));
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (points.empty()) throw ConfigError("operating_points", "no operating points selected");
    for (const auto& p : points) {
        if (!(p.delta > 0.0 && p.i_p > 0.0)) {
            throw ConfigError("operating_points", "delta and i_p must be positive");
        }
    }
    if (!(grid.min_ns >= 1.0)) throw ConfigError("sweep.t_lz_min_ns", "must be >= 1 ns");
    if (grid.count < 1) throw ConfigError("sweep.t_lz_count", "must be >= 1");
    if (grid.count > 1 && !(grid.max_ns > grid.min_ns)) {
        throw ConfigError("sweep.t_lz_max_ns", "must exceed t_lz_min_ns");
    }
    if (!(phi_init < 0.0)) throw ConfigError("sweep.phi_init", "must be negative");
    if (!(phi_final > 0.0)) throw ConfigError("sweep.phi_final", "must be positive");
    if (methods.empty()) throw ConfigError("experiment.methods", "select at least one method");
    for (const auto& v : ptre_variants) {
        if (!(v.w_scale > 0.0)) throw ConfigError("ptre.w_scale", "scales must be positive");
        if (!(v.t_scale > 0.0)) throw ConfigError("ptre.t_scale", "scales must be positive");
    }
    if (parallel < 1) throw ConfigError("experiment.parallel", "must be >= 1");
    try {
        noise.validate();
    } catch (const DomainError& e) {
        throw ConfigError("noise", e.what());
    }
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    const auto count = static_cast<std::size_t>(std::max(1, workers));
    if (count == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(std::min(count, n));
    for (std::size_t w = 0; w < std::min(count, n); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
}

RunRecord base_record(const std::string& tag, const OperatingPoint& point, double phi_init,
                      double phi_final, double t_lz) {
    RunRecord r;
    r.method = tag;
    r.phi_x = point.phi_x;
    r.delta = point.delta;
    r.i_p = point.i_p;
    r.t_lz = t_lz;
    const double v = persistent_current_energy(point.i_p, phi_final - phi_init) / t_lz;
    r.tau = dimensionless_time(point.delta, v);
    return r;
}

void fail_record(RunRecord& r, const std::string& what) {
    r.error = what.empty() ? "unknown error" : what;
    r.p_g = std::numeric_limits<double>::quiet_NaN();
    r.p_e = std::numeric_limits<double>::quiet_NaN();
    r.solver_steps = 0;
}

struct PtreSetup {
    MrtParams mrt;
    NoiseModel noise;
    std::unique_ptr<PolaronSpectrum> spectrum;
    std::string error;
};

PtreSetup make_ptre_setup(const OperatingPoint& point, double phi_init, double phi_final,
                          const NoiseModel& noise, const PtreVariant& variant) {
    PtreSetup s;
    const double w = mrt_width(noise, point.i_p) * variant.w_scale;
    const double temperature = noise.temperature * variant.t_scale;
    s.mrt = MrtParams::from_fdt(w, temperature);
    s.noise = noise.with_temperature(temperature);
    const double eps_max = std::max(std::abs(persistent_current_energy(point.i_p, phi_init)),
                                    std::abs(persistent_current_energy(point.i_p, phi_final)));
    s.spectrum = std::make_unique<PolaronSpectrum>(s.mrt, s.noise, point.i_p, eps_max);
    return s;
}

template <class Fn>
RunRecord timed(RunRecord r, Fn&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        fail_record(r, e.what());
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

RunRecord run_with(Method method, const OperatingPoint& point, double phi_init, double phi_final,
                   double t_lz, const NoiseModel& noise, const SolverOptions& solver,
                   const PtreVariant& variant, bool pauli, bool direct,
                   const PolaronSpectrum* spectrum) {
    const std::string tag = method == Method::ptre ? variant.tag() : to_string(method);
    RunRecord rec = base_record(tag, point, phi_init, phi_final, t_lz);
    return timed(rec, [&](RunRecord& r) {
        const SweepSchedule schedule(point, phi_init, phi_final, t_lz);
        switch (method) {
            case Method::coherent: {
                r.p_e = p_lz(point.delta, schedule.velocity());
                r.p_g = 1.0 - r.p_e;
                break;
            }
            case Method::schrodinger: {
                const auto res = evolve_schrodinger(schedule, solver);
                r.p_g = res.populations.p_g;
                r.p_e = 1.0 - r.p_g;
                r.solver_steps = static_cast<long long>(res.stats.accepted);
                break;
            }
            case Method::ame: {
                const NoiseModel scaled = noise.with_temperature(noise.temperature * variant.t_scale);
                const auto res = evolve_ame(schedule, scaled, solver);
                r.p_g = res.p_g;
                r.p_e = 1.0 - r.p_g;
                r.solver_steps = static_cast<long long>(res.stats.accepted);
                break;
            }
            case Method::ptre: {
                PtreOptions opts;
                opts.solver = solver;
                opts.pauli_reduction = pauli;
                opts.direct_spectrum = direct;
                EvolutionResult res;
                if (spectrum != nullptr) {
                    res = evolve_ptre(schedule, *spectrum, opts);
                } else {
                    const PtreSetup setup =
                        make_ptre_setup(point, phi_init, phi_final, noise, variant);
                    res = evolve_ptre(schedule, *setup.spectrum, opts);
                }
                r.p_g = res.p_g;
                r.p_e = 1.0 - r.p_g;
                r.solver_steps = static_cast<long long>(res.stats.accepted);
                break;
            }
        }
    });
}

}  // namespace

RunRecord run_single(Method method, const OperatingPoint& point, double phi_init, double phi_final,
                     double t_lz, const NoiseModel& noise, const SolverOptions& solver,
                     const PtreVariant& variant, bool pauli, bool direct_spectrum) {
    return run_with(method, point, phi_init, phi_final, t_lz, noise, solver, variant, pauli,
                    direct_spectrum, nullptr);
}

void sort_records(std::vector<RunRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.method != b.method) return a.method < b.method;
        if (a.phi_x != b.phi_x) return a.phi_x < b.phi_x;
        return a.t_lz < b.t_lz;
    });
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto times = config.grid.values();

    // PTRE spectra are shared by every t_lz at a given (point, variant).
    const bool want_ptre =
        std::find(config.methods.begin(), config.methods.end(), Method::ptre) != config.methods.end();
    std::vector<PtreSetup> setups;
    if (want_ptre) {
        setups.resize(config.points.size() * config.ptre_variants.size());
        parallel_for(setups.size(), config.parallel, [&](std::size_t k) {
            const auto& point = config.points[k / config.ptre_variants.size()];
            const auto& variant = config.ptre_variants[k % config.ptre_variants.size()];
            try {
                setups[k] = make_ptre_setup(point, config.phi_init, config.phi_final, config.noise,
                                            variant);
            } catch (const std::exception& e) {
                setups[k].error = e.what();
            }
        });
    }

    struct Job {
        Method method;
        std::size_t point;
        std::size_t variant;
        double t_lz;
    };
    std::vector<Job> jobs;
    for (Method m : config.methods) {
        const std::size_t nv = m == Method::ptre ? config.ptre_variants.size() : 1;
        for (std::size_t p = 0; p < config.points.size(); ++p) {
            for (std::size_t v = 0; v < nv; ++v) {
                for (double t : times) jobs.push_back({m, p, v, t});
            }
        }
    }

    std::vector<RunRecord> records(jobs.size());
    parallel_for(jobs.size(), config.parallel, [&](std::size_t i) {
        const Job& job = jobs[i];
        const auto& point = config.points[job.point];
        const PtreVariant variant =
            job.method == Method::ptre ? config.ptre_variants[job.variant] : PtreVariant{};
        const PolaronSpectrum* spectrum = nullptr;
        if (job.method == Method::ptre) {
            const auto& setup = setups[job.point * config.ptre_variants.size() + job.variant];
            if (!setup.error.empty()) {
                records[i] = base_record(variant.tag(), point, config.phi_init, config.phi_final,
                                         job.t_lz);
                fail_record(records[i], setup.error);
                return;
            }
            spectrum = setup.spectrum.get();
        }
        records[i] = run_with(job.method, point, config.phi_init, config.phi_final, job.t_lz,
                              config.noise, config.solver, variant, config.ptre_pauli, false,
                              spectrum);
        if (!records[i].ok()) {
            spdlog::warn("{} run failed at phi_x = {}, t_lz = {} ns: {}", records[i].method,
                         point.phi_x, job.t_lz, records[i].error);
        }
    });

    sort_records(records);
    return records;
}

}  // namespace lzx
