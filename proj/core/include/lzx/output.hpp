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

// output.hpp: CSV and SVG writers for run records and trajectories

#pragma once

#include <span>
#include <string>
#include <vector>

#include "lzx/ame.hpp"
#include "lzx/harness.hpp"

namespace lzx {

inline constexpr const char* record_csv_header =
    "method,phi_x,delta_GHz,ip_uA,t_lz_ns,tau,p_g,p_e,wall_time_s,solver_steps";

/// Writes records with full round-trip precision. Throws std::invalid_argument
/// on an empty record set (no file is created) and std::runtime_error when the
/// path cannot be written.
void emit_csv(std::span<const RunRecord> records, const std::string& path);
std::string records_to_csv(std::span<const RunRecord> records);
std::vector<RunRecord> read_csv(const std::string& path);
std::vector<RunRecord> parse_records_csv(const std::string& text);

/// Failed runs as `method,phi_x,t_lz_ns,error`.
void emit_errors_csv(std::span<const RunRecord> records, const std::string& path);

enum class PlotAxis { t_lz, tau };

/// SVG panel with a log-x axis: one <path class="series"> per (method, phi_x)
/// and <path class="coherent-limit"> curves for 1 - P_LZ.
void emit_plot(std::span<const RunRecord> records, const std::string& path, PlotAxis axis);
std::string render_plot(std::span<const RunRecord> records, PlotAxis axis);

/// `t_ns,p_g,p_e,re_coh,im_coh`.
void emit_trajectory_csv(std::span<const TrajectorySample> samples, const std::string& path);

}  // namespace lzx
