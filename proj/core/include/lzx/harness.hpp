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

// harness.hpp: experiment grids over operating points, sweep times and methods

#pragma once

#include <string>
#include <vector>

#include "lzx/device.hpp"
#include "lzx/integrator.hpp"
#include "lzx/noise.hpp"

namespace lzx {

enum class Method { coherent, schrodinger, ame, ptre };

std::string to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(const std::string& name);

/// One PTRE parameter variation: W -> w_scale W and T -> t_scale T, with
/// eps_p re-derived from the fluctuation-dissipation relation.
struct PtreVariant {
    double w_scale{1.0};
    double t_scale{1.0};

    /// "ptre" for the nominal variant, otherwise e.g. "ptre_w4_t1".
    std::string tag() const;
};

/// Log-spaced sweep durations.
struct TimeGrid {
    double min_ns{2.0};
    double max_ns{5000.0};
    int count{20};

    std::vector<double> values() const;
};

struct ExperimentConfig {
    std::vector<OperatingPoint> points;
    TimeGrid grid;
    double phi_init{-0.005};
    double phi_final{0.005};
    NoiseModel noise;
    std::vector<Method> methods{Method::coherent, Method::ame, Method::ptre};
    std::vector<PtreVariant> ptre_variants{PtreVariant{}};
    bool ptre_pauli{false};
    SolverOptions solver;
    std::string output_dir{"out"};
    int parallel{1};

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

struct RunRecord {
    std::string method;
    double phi_x{0.0};
    double delta{0.0};   // GHz
    double i_p{0.0};     // uA
    double t_lz{0.0};    // ns
    double tau{0.0};
    double p_g{0.0};
    double p_e{0.0};
    double wall_time{0.0};  // s
    long long solver_steps{0};
    std::string error;  // empty for successful runs

    bool ok() const { return error.empty(); }
    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Runs every (method, operating point, t_lz, PTRE variant) combination on a
/// pool of `config.parallel` workers. Per-run failures become records with a
/// non-empty `error` and NaN populations. Output is sorted by
/// (method, phi_x, t_lz) and independent of the worker count.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// Single run helpers shared with the CLI.
RunRecord run_single(Method method, const OperatingPoint& point, double phi_init, double phi_final,
                     double t_lz, const NoiseModel& noise, const SolverOptions& solver,
                     const PtreVariant& variant = {}, bool pauli = false,
                     bool direct_spectrum = false);

void sort_records(std::vector<RunRecord>& records);

}  // namespace lzx
