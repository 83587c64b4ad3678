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

#include "lzx/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>

namespace lzx {

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

double parse_num(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("malformed number '" + s + "'");
    return v;
}

}  // namespace

std::string records_to_csv(std::span<const RunRecord> records) {
    std::string out = std::string(record_csv_header) + "\n";
    for (const auto& r : records) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.method, num(r.phi_x), num(r.delta),
                           num(r.i_p), num(r.t_lz), num(r.tau), num(r.p_g), num(r.p_e),
                           num(r.wall_time), r.solver_steps);
    }
    return out;
}

void emit_csv(std::span<const RunRecord> records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records to write");
    write_file(path, records_to_csv(records));
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || boost::trim_copy(line) != record_csv_header) {
        throw std::runtime_error("unexpected CSV header");
    }
    std::vector<RunRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        boost::trim(line);
        if (line.empty()) continue;
        std::vector<std::string> f;
        boost::split(f, line, boost::is_any_of(","));
        if (f.size() != 10) {
            throw std::runtime_error(fmt::format("line {}: expected 10 fields, got {}", lineno, f.size()));
        }
        try {
            RunRecord r;
            r.method = f[0];
            r.phi_x = parse_num(f[1]);
            r.delta = parse_num(f[2]);
            r.i_p = parse_num(f[3]);
            r.t_lz = parse_num(f[4]);
            r.tau = parse_num(f[5]);
            r.p_g = parse_num(f[6]);
            r.p_e = parse_num(f[7]);
            r.wall_time = parse_num(f[8]);
            r.solver_steps = std::stoll(f[9]);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error(fmt::format("line {}: {}", lineno, e.what()));
        }
    }
    return out;
}

std::vector<RunRecord> read_csv(const std::string& path) { return parse_records_csv(read_file(path)); }

void emit_errors_csv(std::span<const RunRecord> records, const std::string& path) {
    std::string out = "method,phi_x,t_lz_ns,error\n";
    for (const auto& r : records) {
        if (r.ok()) continue;
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), '"', '\'');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out += fmt::format("{},{},{},\"{}\"\n", r.method, num(r.phi_x), num(r.t_lz), msg);
    }
    write_file(path, out);
}

std::string render_plot(std::span<const RunRecord> records, PlotAxis axis) {
    if (records.empty()) throw std::invalid_argument("render_plot: no records");
    constexpr double width = 640, height = 420, left = 60, right = 20, top = 20, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    auto xval = [axis](const RunRecord& r) { return axis == PlotAxis::t_lz ? r.t_lz : r.tau; };
    double xmin = INFINITY, xmax = -INFINITY;
    for (const auto& r : records) {
        const double x = xval(r);
        if (x > 0.0) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
    }
    if (!(xmin < xmax)) {
        xmin = std::isfinite(xmin) ? xmin / 10.0 : 1.0;
        xmax = xmin * 100.0;
    }
    const double lmin = std::floor(std::log10(xmin));
    const double lmax = std::ceil(std::log10(xmax));
    auto px = [&](double x) { return left + (std::log10(x) - lmin) / (lmax - lmin) * pw; };
    auto py = [&](double p) { return top + (1.0 - std::clamp(p, 0.0, 1.0)) * ph; };

    std::string svg = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        width, height, width, height);
    svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", left, top + ph, left + pw, top + ph);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", left, top, left, top + ph);
    for (double d = lmin; d <= lmax; d += 1.0) {
        const double x = left + (d - lmin) / (lmax - lmin) * pw;
        svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{}\" x2=\"{:.2f}\" y2=\"{}\"/>\n", x, top + ph, x,
                           top + ph + 5);
    }
    svg += "</g>\n<g class=\"labels\" font-size=\"11\" font-family=\"sans-serif\">\n";
    for (double d = lmin; d <= lmax; d += 1.0) {
        const double x = left + (d - lmin) / (lmax - lmin) * pw;
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">1e{:g}</text>\n", x,
                           top + ph + 18, d);
    }
    for (double p : {0.0, 0.5, 1.0}) {
        svg += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n", left - 6,
                           py(p) + 4, p);
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                       height - 8, axis == PlotAxis::t_lz ? "T_LZ (ns)" : "tau");
    svg += fmt::format("<text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">P_g</text>\n",
                       top + ph / 2, top + ph / 2);
    svg += "</g>\n";

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    std::map<std::pair<std::string, double>, std::vector<const RunRecord*>> series;
    for (const auto& r : records) series[{r.method, r.phi_x}].push_back(&r);
    std::map<std::string, int> method_index;
    for (const auto& [key, _] : series) method_index.emplace(key.first, static_cast<int>(method_index.size()));

    auto curve = [&](auto points) {
        std::string d;
        for (const auto& [x, p] : points) {
            if (!(x > 0.0) || !std::isfinite(p)) continue;
            d += fmt::format("{}{:.2f},{:.2f}", d.empty() ? "M" : " L", px(x), py(p));
        }
        return d;
    };

    // Coherent limit 1 - P_LZ = 1 - exp(-pi tau / 2): one universal curve in
    // tau, one per operating point in T_LZ.
    auto limit_points = [&](double tau_per_x) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= 120; ++i) {
            const double x = std::pow(10.0, lmin + (lmax - lmin) * i / 120.0);
            pts.emplace_back(x, 1.0 - std::exp(-std::numbers::pi / 2.0 * tau_per_x * x));
        }
        return pts;
    };
    if (axis == PlotAxis::tau) {
        svg += fmt::format("<path class=\"coherent-limit\" fill=\"none\" stroke=\"gray\" "
                           "stroke-dasharray=\"4 3\" d=\"{}\"/>\n",
                           curve(limit_points(1.0)));
    } else {
        std::map<double, double> tau_per_ns;
        for (const auto& r : records) {
            if (r.t_lz > 0.0 && r.tau > 0.0) tau_per_ns.emplace(r.phi_x, r.tau / r.t_lz);
        }
        for (const auto& [phi, k] : tau_per_ns) {
            svg += fmt::format("<path class=\"coherent-limit\" data-phi-x=\"{}\" fill=\"none\" "
                               "stroke=\"gray\" stroke-dasharray=\"4 3\" d=\"{}\"/>\n",
                               num(phi), curve(limit_points(k)));
        }
    }

    for (auto& [key, rows] : series) {
        std::sort(rows.begin(), rows.end(),
                  [&](const RunRecord* a, const RunRecord* b) { return xval(*a) < xval(*b); });
        std::vector<std::pair<double, double>> pts;
        for (const auto* r : rows) pts.emplace_back(xval(*r), r->p_g);
        const auto colour = palette[method_index[key.first] % std::size(palette)];
        svg += fmt::format("<path class=\"series\" data-method=\"{}\" data-phi-x=\"{}\" fill=\"none\" "
                           "stroke=\"{}\" stroke-width=\"1.5\" d=\"{}\"/>\n",
                           key.first, num(key.second), colour, curve(pts));
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(std::span<const RunRecord> records, const std::string& path, PlotAxis axis) {
    if (records.empty()) throw std::invalid_argument("emit_plot: no records to plot");
    write_file(path, render_plot(records, axis));
}

void emit_trajectory_csv(std::span<const TrajectorySample> samples, const std::string& path) {
    std::string out = "t_ns,p_g,p_e,re_coh,im_coh\n";
    for (const auto& s : samples) {
        out += fmt::format("{},{},{},{},{}\n", num(s.t), num(s.p_g), num(s.p_e), num(s.coherence.real()),
                           num(s.coherence.imag()));
    }
    write_file(path, out);
}

}  // namespace lzx
