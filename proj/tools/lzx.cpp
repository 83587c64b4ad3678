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

// lzx: command-line front end for sweeps, single evolutions and noise tools.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lzx/coherent.hpp"
#include "lzx/config.hpp"
#include "lzx/gap_fit.hpp"
#include "lzx/harness.hpp"
#include "lzx/noise.hpp"
#include "lzx/output.hpp"
#include "lzx/ptre.hpp"

namespace {

using namespace lzx;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("lzx");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("LZX_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off") {
            spdlog::warn("LZX_LOG: unknown level '{}', keeping 'warn'", env);
        } else {
            spdlog::set_level(level);
        }
    }
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

// Settings shared by the single-run subcommands: an optional config file
// supplies noise, solver and endpoints; explicit flags override it.
struct RunSettings {
    std::string config;
    std::optional<double> phi_x;
    std::optional<double> delta;
    std::optional<double> i_p;
    std::optional<double> phi_init;
    std::optional<double> phi_final;
    std::optional<double> temperature;
    std::optional<double> rtol;
    std::optional<double> atol;

    void add_to(CLI::App* app, bool with_point) {
        app->add_option("--config", config, "Experiment config supplying noise and solver settings")
            ->check(CLI::ExistingFile);
        if (with_point) {
            app->add_option("--phi-x", phi_x, "x-bias (Phi0), interpolated in the config's table");
            app->add_option("--delta-GHz", delta, "Minimum gap Delta/h (GHz)");
            app->add_option("--ip-uA", i_p, "Persistent current (uA)");
            app->add_option("--phi-init", phi_init, "Initial z flux offset (Phi0)");
            app->add_option("--phi-final", phi_final, "Final z flux offset (Phi0)");
            app->add_option("--rtol", rtol, "Integrator relative tolerance");
            app->add_option("--atol", atol, "Integrator absolute tolerance");
        }
        app->add_option("--temperature-K", temperature, "Bath temperature (K)");
    }

    ExperimentConfig base() const {
        ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
        if (temperature) cfg.noise.temperature = *temperature;
        if (phi_init) cfg.phi_init = *phi_init;
        if (phi_final) cfg.phi_final = *phi_final;
        if (rtol) cfg.solver.rtol = *rtol;
        if (atol) cfg.solver.atol = *atol;
        try {
            cfg.noise.validate();
        } catch (const DomainError& e) {
            throw ConfigError("noise", e.what());
        }
        return cfg;
    }

    OperatingPoint point(const ExperimentConfig& cfg) const {
        OperatingPoint p;
        if (phi_x) {
            const auto table = config.empty() ? default_operating_table() : cfg.points;
            try {
                p = interpolate_operating_point(table, *phi_x);
            } catch (const std::exception& e) {
                throw ConfigError("--phi-x", e.what());
            }
        } else if (!delta || !i_p) {
            throw ConfigError("--delta-GHz", "give --phi-x, or both --delta-GHz and --ip-uA");
        }
        if (delta) p.delta = *delta;
        if (i_p) p.i_p = *i_p;
        if (!(p.delta > 0.0)) throw ConfigError("--delta-GHz", "must be positive");
        if (!(p.i_p > 0.0)) throw ConfigError("--ip-uA", "must be positive");
        return p;
    }
};

int cmd_coherent(const RunSettings& s, const std::vector<double>& times) {
    const auto cfg = s.base();
    const auto p = s.point(cfg);
    std::cout << "t_lz_ns,tau,p_lz,p_g\n";
    for (double t : times) {
        const SweepSchedule sched(p, cfg.phi_init, cfg.phi_final, t);
        const double pe = p_lz(p.delta, sched.velocity());
        std::cout << fmt::format("{},{},{},{}\n", g17(t), g17(sched.tau()), g17(pe), g17(1.0 - pe));
    }
    return exit_ok;
}

struct EvolveArgs {
    std::string method{"ame"};
    std::vector<double> times;
    double w_scale{1.0};
    double t_scale{1.0};
    bool pauli{false};
    bool direct{false};
    std::string trajectory;
    double stride{0.0};
};

int cmd_evolve(const RunSettings& s, const EvolveArgs& a) {
    const auto cfg = s.base();
    const auto p = s.point(cfg);
    Method method;
    try {
        method = parse_method(a.method);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("--method", e.what());
    }
    if (!(a.w_scale > 0.0)) throw ConfigError("--w-scale", "must be positive");
    if (!(a.t_scale > 0.0)) throw ConfigError("--t-scale", "must be positive");
    if (!a.trajectory.empty() && a.times.size() != 1) {
        throw ConfigError("--trajectory", "needs exactly one --t-lz-ns value");
    }

    std::vector<RunRecord> records;
    for (double t : a.times) {
        SolverOptions solver = cfg.solver;
        if (!a.trajectory.empty()) {
            solver.sample_stride = a.stride > 0.0 ? a.stride : t / 1000.0;
            const SweepSchedule sched(p, cfg.phi_init, cfg.phi_final, t);
            EvolutionResult res;
            if (method == Method::ame) {
                res = evolve_ame(sched, cfg.noise.with_temperature(cfg.noise.temperature * a.t_scale), solver);
            } else if (method == Method::ptre) {
                const double w = mrt_width(cfg.noise, p.i_p) * a.w_scale;
                const double temp = cfg.noise.temperature * a.t_scale;
                PtreOptions opts;
                opts.solver = solver;
                opts.pauli_reduction = a.pauli;
                opts.direct_spectrum = a.direct;
                res = evolve_ptre(sched, MrtParams::from_fdt(w, temp), cfg.noise.with_temperature(temp), opts);
            } else {
                throw ConfigError("--trajectory", "trajectories are available for ame and ptre");
            }
            emit_trajectory_csv(res.trajectory, a.trajectory);
        }
        records.push_back(run_single(method, p, cfg.phi_init, cfg.phi_final, t, cfg.noise, cfg.solver,
                                     {a.w_scale, a.t_scale}, a.pauli, a.direct));
    }
    std::cout << records_to_csv(records);
    bool any_ok = false;
    for (const auto& r : records) {
        if (r.ok()) {
            any_ok = true;
        } else {
            spdlog::error("{} at t_lz = {} ns: {}", r.method, r.t_lz, r.error);
        }
    }
    return any_ok ? exit_ok : exit_numeric;
}

int cmd_mrt(const RunSettings& s, const std::vector<double>& currents) {
    const auto cfg = s.base();
    std::cout << "ip_uA,W_GHz,eps_p_fdt_GHz,eps_p_integral_GHz,integral_over_fdt\n";
    for (double ip : currents) {
        const MrtParams m = mrt_params_fdt(cfg.noise, ip);
        const double e = reorganization_energy_integral(cfg.noise, ip);
        std::cout << fmt::format("{},{},{},{},{}\n", g17(ip), g17(m.w), g17(m.epsilon_p), g17(e),
                                 g17(e / m.epsilon_p));
    }
    return exit_ok;
}

struct PsdArgs {
    std::string kind{"ame"};
    double f_min{1e-3};
    double f_max{10.0};
    int points{61};
    bool negative{false};
    double i_p{0.129};
    double w_scale{1.0};
};

int cmd_psd(const RunSettings& s, const PsdArgs& a) {
    const auto cfg = s.base();
    if (!(a.f_min > 0.0 && a.f_max > a.f_min)) throw ConfigError("--f-min-GHz", "need 0 < f_min < f_max");
    if (a.points < 2) throw ConfigError("--points", "need at least 2 points");
    std::function<double(double)> psd;
    const NoiseSpectrum spectrum(cfg.noise);
    std::optional<PolaronSpectrum> polaron;
    if (a.kind == "one_over_f") {
        psd = [&](double w) { return spectrum.one_over_f(w); };
    } else if (a.kind == "ohmic") {
        psd = [&](double w) { return spectrum.ohmic(w); };
    } else if (a.kind == "ame") {
        psd = [&](double w) { return spectrum.ame(w); };
    } else if (a.kind == "polaron") {
        const MrtParams mrt =
            MrtParams::from_fdt(mrt_width(cfg.noise, a.i_p) * a.w_scale, cfg.noise.temperature);
        psd = [&, mrt](double w) { return polaron_psd(mrt, cfg.noise, a.i_p, w); };
    } else {
        throw ConfigError("--kind", "expected one_over_f, ohmic, ame or polaron");
    }
    std::cout << "f_GHz,omega_rad_per_ns,psd\n";
    const double sign = a.negative ? -1.0 : 1.0;
    for (int i = 0; i < a.points; ++i) {
        const double f = a.f_min * std::pow(a.f_max / a.f_min, static_cast<double>(i) / (a.points - 1));
        const double w = sign * two_pi * f;
        std::cout << fmt::format("{},{},{}\n", g17(sign * f), g17(w), g17(psd(w)));
    }
    return exit_ok;
}

struct FitArgs {
    std::string input;
    double i_p{0.0};
    double flux_span{0.01};
    FitOptions opts;
};

int cmd_fit(const FitArgs& a) {
    DecaySeries series;
    try {
        series = DecaySeries::read_csv(a.input);
    } catch (const std::exception& e) {
        throw ConfigError("--input", e.what());
    }
    std::cout << gap_fit_csv(fit_gap(series, a.i_p, a.flux_span, a.opts));
    return exit_ok;
}

struct SweepArgs {
    std::string config;
    std::string out;
    std::optional<int> parallel;
    std::vector<std::string> methods;
    std::vector<double> w_scale;
    std::vector<double> t_scale;
};

int cmd_sweep(const SweepArgs& a) {
    ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
    if (a.config.empty()) {
        cfg.points = default_operating_table();
    }
    if (!a.out.empty()) cfg.output_dir = a.out;
    if (a.parallel) cfg.parallel = *a.parallel;
    if (!a.methods.empty()) {
        cfg.methods.clear();
        for (const auto& m : a.methods) {
            try {
                cfg.methods.push_back(parse_method(m));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("--method", e.what());
            }
        }
    }
    if (!a.w_scale.empty() || !a.t_scale.empty()) {
        const std::vector<double> ws = a.w_scale.empty() ? std::vector<double>{1.0} : a.w_scale;
        const std::vector<double> ts = a.t_scale.empty() ? std::vector<double>{1.0} : a.t_scale;
        if (ws.size() != ts.size() && ws.size() != 1 && ts.size() != 1) {
            throw ConfigError("--t-scale", "--w-scale and --t-scale lists must match in length");
        }
        cfg.ptre_variants.clear();
        for (std::size_t i = 0; i < std::max(ws.size(), ts.size()); ++i) {
            cfg.ptre_variants.push_back({ws[ws.size() == 1 ? 0 : i], ts[ts.size() == 1 ? 0 : i]});
        }
    }
    cfg.validate();

    std::filesystem::create_directories(cfg.output_dir);
    const auto dir = std::filesystem::path(cfg.output_dir);
    spdlog::info("running {} operating points x {} sweep times", cfg.points.size(), cfg.grid.count);
    const auto records = run_experiment(cfg);

    std::vector<RunRecord> good;
    std::vector<RunRecord> bad;
    for (const auto& r : records) (r.ok() ? good : bad).push_back(r);
    emit_csv(records, (dir / "records.csv").string());
    if (!bad.empty()) emit_errors_csv(bad, (dir / "errors.csv").string());
    if (!good.empty()) {
        emit_plot(good, (dir / "pg_vs_tlz.svg").string(), PlotAxis::t_lz);
        emit_plot(good, (dir / "pg_vs_tau.svg").string(), PlotAxis::tau);
    }
    std::ofstream((dir / "config.ini").string()) << dump_config(cfg);
    std::cout << fmt::format("{} runs, {} failed; output in {}\n", records.size(), bad.size(),
                             cfg.output_dir);
    return good.empty() ? exit_numeric : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Dissipative Landau-Zener sweeps of a flux qubit"};
    app.require_subcommand(1);

    RunSettings coherent_s;
    std::vector<double> coherent_t{10.0};
    auto* coherent = app.add_subcommand("coherent", "Closed-form Landau-Zener probabilities");
    coherent_s.add_to(coherent, true);
    coherent->add_option("--t-lz-ns", coherent_t, "Sweep durations (ns)")->delimiter(',');

    RunSettings evolve_s;
    EvolveArgs evolve_a;
    auto* evolve = app.add_subcommand("evolve", "Single sweep with one method");
    evolve_s.add_to(evolve, true);
    evolve->add_option("--method", evolve_a.method, "coherent, schrodinger, ame or ptre");
    evolve->add_option("--t-lz-ns", evolve_a.times, "Sweep durations (ns)")->delimiter(',')->required();
    evolve->add_option("--w-scale", evolve_a.w_scale, "PTRE: multiply the MRT width");
    evolve->add_option("--t-scale", evolve_a.t_scale, "Multiply the bath temperature");
    evolve->add_flag("--pauli", evolve_a.pauli, "PTRE: evolve populations only");
    evolve->add_flag("--direct-spectrum", evolve_a.direct, "PTRE: convolve at every step instead of interpolating");
    evolve->add_option("--trajectory", evolve_a.trajectory, "Write the population trajectory CSV");
    evolve->add_option("--stride-ns", evolve_a.stride, "Trajectory sample spacing (ns)");

    RunSettings mrt_s;
    std::vector<double> mrt_ip{0.104, 0.129};
    auto* mrt = app.add_subcommand("mrt-params", "MRT width and reorganization energy");
    mrt_s.add_to(mrt, false);
    mrt->add_option("--ip-uA", mrt_ip, "Persistent currents (uA)")->delimiter(',');

    RunSettings psd_s;
    PsdArgs psd_a;
    auto* psd = app.add_subcommand("psd", "Tabulate a noise spectrum on a log frequency grid");
    psd_s.add_to(psd, false);
    psd->add_option("--kind", psd_a.kind, "one_over_f, ohmic, ame or polaron");
    psd->add_option("--f-min-GHz", psd_a.f_min, "Lowest |f| (GHz)");
    psd->add_option("--f-max-GHz", psd_a.f_max, "Highest |f| (GHz)");
    psd->add_option("--points", psd_a.points, "Number of samples");
    psd->add_flag("--negative", psd_a.negative, "Sample negative frequencies");
    psd->add_option("--ip-uA", psd_a.i_p, "Persistent current for the polaron spectrum (uA)");
    psd->add_option("--w-scale", psd_a.w_scale, "Multiply the MRT width of the polaron spectrum");

    FitArgs fit_a;
    auto* fit = app.add_subcommand("fit-gap", "Exponential fit of short-sweep P_e and effective gap");
    fit->add_option("--input", fit_a.input, "CSV with t_lz_ns,p_e")->required();
    fit->add_option("--ip-uA", fit_a.i_p, "Persistent current (uA)")->required();
    fit->add_option("--flux-span", fit_a.flux_span, "phi_final - phi_init (Phi0)");
    fit->add_option("--initial-window-ns", fit_a.opts.initial_window, "Initial fit window (ns)");
    fit->add_option("--mse-threshold", fit_a.opts.mse_threshold, "Window growth stops above this MSE");

    SweepArgs sweep_a;
    auto* sweep = app.add_subcommand("sweep", "Run an experiment grid and write CSV and SVG");
    sweep->add_option("--config", sweep_a.config, "Experiment config file")->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_a.out, "Output directory");
    sweep->add_option("--parallel", sweep_a.parallel, "Worker threads");
    sweep->add_option("--method", sweep_a.methods, "Override the method list")->delimiter(',');
    sweep->add_option("--w-scale", sweep_a.w_scale, "PTRE width scales")->delimiter(',');
    sweep->add_option("--t-scale", sweep_a.t_scale, "PTRE temperature scales")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*coherent) return cmd_coherent(coherent_s, coherent_t);
        if (*evolve) return cmd_evolve(evolve_s, evolve_a);
        if (*mrt) return cmd_mrt(mrt_s, mrt_ip);
        if (*psd) return cmd_psd(psd_s, psd_a);
        if (*fit) return cmd_fit(fit_a);
        if (*sweep) return cmd_sweep(sweep_a);
    } catch (const ConfigError& e) {
        spdlog::error("config error: {}", e.what());
        return exit_config;
    } catch (const DomainError& e) {
        spdlog::error("invalid input: {}", e.what());
        return exit_config;
    } catch (const std::invalid_argument& e) {
        spdlog::error("invalid input: {}", e.what());
        return exit_config;
    } catch (const NumericError& e) {
        spdlog::error("numeric error: {}", e.what());
        return exit_numeric;
    } catch (const InsufficientDataError& e) {
        spdlog::error("fit failed: {}", e.what());
        return exit_numeric;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return exit_failure;
    }
    return exit_failure;
}
