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

#include "lzx/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace lzx {

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"experiment", {"methods", "output_dir", "parallel"}},
        {"operating_points", {"table", "phi_x", "inline"}},
        {"sweep", {"t_lz_min_ns", "t_lz_max_ns", "t_lz_count", "phi_init", "phi_final"}},
        {"noise",
         {"a_star", "alpha", "b", "gamma", "temperature_K", "f_l_GHz", "f_h_GHz", "f_low_mrt_Hz",
          "f_high_mrt_GHz"}},
        {"ptre", {"w_scale", "t_scale", "pauli"}},
        {"solver", {"rtol", "atol", "coarse_tail", "sample_stride_ns"}},
    };
    return keys;
}

std::vector<std::string> split(const std::string& text, const char* seps) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(seps));
    std::vector<std::string> out;
    for (auto& p : parts) {
        boost::trim(p);
        if (!p.empty()) out.push_back(p);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw ConfigError(key, "expected a finite number, got '" + text + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string t = boost::to_lower_copy(text);
    if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
    if (t == "false" || t == "no" || t == "off" || t == "0") return false;
    throw ConfigError(key, "expected a boolean, got '" + text + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split(text, ",")) out.push_back(to_double(key, p));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> get(const std::string& section, const std::string& name) const {
        const auto sec = tree_.get_child_optional(section);
        if (!sec) return std::nullopt;
        const auto v = sec->get_child_optional(pt::ptree::path_type(name, '\0'));
        if (!v) return std::nullopt;
        return boost::trim_copy(v->data());
    }

    void number(const std::string& section, const std::string& name, double& out) const {
        if (auto v = get(section, name)) out = to_double(section + "." + name, *v);
    }

private:
    const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree) {
    const auto& known = known_keys();
    for (const auto& [section, body] : tree) {
        const auto it = known.find(section);
        if (it == known.end()) {
            if (body.empty()) throw ConfigError(section, "keys must live inside a [section]");
            throw ConfigError(section, "unknown section");
        }
        for (const auto& [name, value] : body) {
            if (!it->second.contains(name)) throw ConfigError(section + "." + name, "unknown key");
        }
    }
}

std::vector<OperatingPoint> parse_inline_points(const std::string& text) {
    std::vector<OperatingPoint> table;
    for (const auto& row : split(text, ";")) {
        const auto cols = split(row, ":");
        if (cols.size() != 3) {
            throw ConfigError("operating_points.inline", "rows must read phi:delta:ip, got '" + row + "'");
        }
        table.push_back({to_double("operating_points.inline", cols[0]),
                         to_double("operating_points.inline", cols[1]),
                         to_double("operating_points.inline", cols[2])});
    }
    return table;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", fmt::format("line {}: {}", e.line(), e.message()));
    }
    check_keys(tree);
    const Reader r(tree);
    ExperimentConfig cfg;

    if (auto v = r.get("experiment", "methods")) {
        cfg.methods.clear();
        for (const auto& name : split(*v, ",")) {
            try {
                cfg.methods.push_back(parse_method(name));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("experiment.methods", e.what());
            }
        }
    }
    if (auto v = r.get("experiment", "output_dir")) cfg.output_dir = *v;
    if (auto v = r.get("experiment", "parallel")) cfg.parallel = to_int("experiment.parallel", *v);

    const auto table_path = r.get("operating_points", "table");
    const auto inline_rows = r.get("operating_points", "inline");
    if (table_path && inline_rows) {
        throw ConfigError("operating_points.inline", "give either a table file or inline rows");
    }
    std::vector<OperatingPoint> table;
    if (table_path) {
        std::filesystem::path p(*table_path);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        try {
            table = read_operating_table(p.string());
        } catch (const std::exception& e) {
            throw ConfigError("operating_points.table", e.what());
        }
    } else if (inline_rows) {
        table = parse_inline_points(*inline_rows);
    } else {
        table = default_operating_table();
    }
    if (auto v = r.get("operating_points", "phi_x")) {
        try {
            validate_operating_table(table);
        } catch (const std::exception& e) {
            throw ConfigError("operating_points", e.what());
        }
        for (double phi : to_doubles("operating_points.phi_x", *v)) {
            try {
                cfg.points.push_back(interpolate_operating_point(table, phi));
            } catch (const std::out_of_range& e) {
                throw ConfigError("operating_points.phi_x", e.what());
            }
        }
    } else {
        cfg.points = table;
    }

    r.number("sweep", "t_lz_min_ns", cfg.grid.min_ns);
    r.number("sweep", "t_lz_max_ns", cfg.grid.max_ns);
    if (auto v = r.get("sweep", "t_lz_count")) cfg.grid.count = to_int("sweep.t_lz_count", *v);
    r.number("sweep", "phi_init", cfg.phi_init);
    r.number("sweep", "phi_final", cfg.phi_final);

    NoiseModel& n = cfg.noise;
    r.number("noise", "a_star", n.a_star);
    r.number("noise", "alpha", n.alpha);
    r.number("noise", "b", n.b);
    r.number("noise", "gamma", n.gamma);
    r.number("noise", "temperature_K", n.temperature);
    if (auto v = r.get("noise", "f_l_GHz")) n.omega_l = two_pi * to_double("noise.f_l_GHz", *v);
    if (auto v = r.get("noise", "f_h_GHz")) n.omega_h = two_pi * to_double("noise.f_h_GHz", *v);
    if (auto v = r.get("noise", "f_low_mrt_Hz")) {
        n.omega_low_mrt = two_pi * to_double("noise.f_low_mrt_Hz", *v) / per_hz_to_ns;
    }
    if (auto v = r.get("noise", "f_high_mrt_GHz")) {
        n.omega_high_mrt = two_pi * to_double("noise.f_high_mrt_GHz", *v);
    }

    std::vector<double> ws{1.0};
    std::vector<double> ts{1.0};
    if (auto v = r.get("ptre", "w_scale")) ws = to_doubles("ptre.w_scale", *v);
    if (auto v = r.get("ptre", "t_scale")) ts = to_doubles("ptre.t_scale", *v);
    if (ws.size() != ts.size() && ws.size() != 1 && ts.size() != 1) {
        throw ConfigError("ptre.t_scale", "w_scale and t_scale lists must match in length");
    }
    cfg.ptre_variants.clear();
    for (std::size_t i = 0; i < std::max(ws.size(), ts.size()); ++i) {
        cfg.ptre_variants.push_back({ws[ws.size() == 1 ? 0 : i], ts[ts.size() == 1 ? 0 : i]});
    }
    if (auto v = r.get("ptre", "pauli")) cfg.ptre_pauli = to_bool("ptre.pauli", *v);

    r.number("solver", "rtol", cfg.solver.rtol);
    r.number("solver", "atol", cfg.solver.atol);
    if (auto v = r.get("solver", "coarse_tail")) cfg.solver.coarse_tail = to_bool("solver.coarse_tail", *v);
    r.number("solver", "sample_stride_ns", cfg.solver.sample_stride);
    if (!(cfg.solver.rtol > 0.0)) throw ConfigError("solver.rtol", "must be positive");
    if (!(cfg.solver.atol > 0.0)) throw ConfigError("solver.atol", "must be positive");
    if (cfg.solver.sample_stride < 0.0) throw ConfigError("solver.sample_stride_ns", "must be >= 0");

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_config(text.str(), dir.empty() ? "." : dir.string());
}

std::string dump_config(const ExperimentConfig& c) {
    auto join = [](const auto& items, auto&& fmt_one, const char* sep) {
        std::string out;
        for (const auto& it : items) {
            if (!out.empty()) out += sep;
            out += fmt_one(it);
        }
        return out;
    };
    std::string s;
    s += "[experiment]\n";
    s += "methods = " + join(c.methods, [](Method m) { return to_string(m); }, ", ") + "\n";
    s += "output_dir = " + c.output_dir + "\n";
    s += fmt::format("parallel = {}\n\n", c.parallel);
    s += "[operating_points]\n";
    s += "inline = " +
         join(c.points,
              [](const OperatingPoint& p) {
                  return fmt::format("{:.17g}:{:.17g}:{:.17g}", p.phi_x, p.delta, p.i_p);
              },
              "; ") +
         "\n\n";
    s += "[sweep]\n";
    s += fmt::format("t_lz_min_ns = {:.17g}\nt_lz_max_ns = {:.17g}\nt_lz_count = {}\n", c.grid.min_ns,
                     c.grid.max_ns, c.grid.count);
    s += fmt::format("phi_init = {:.17g}\nphi_final = {:.17g}\n\n", c.phi_init, c.phi_final);
    const NoiseModel& n = c.noise;
    s += "[noise]\n";
    s += fmt::format("a_star = {:.17g}\nalpha = {:.17g}\nb = {:.17g}\ngamma = {:.17g}\n", n.a_star,
                     n.alpha, n.b, n.gamma);
    s += fmt::format("temperature_K = {:.17g}\n", n.temperature);
    s += fmt::format("f_l_GHz = {:.17g}\nf_h_GHz = {:.17g}\n", n.omega_l / two_pi, n.omega_h / two_pi);
    s += fmt::format("f_low_mrt_Hz = {:.17g}\nf_high_mrt_GHz = {:.17g}\n\n",
                     n.omega_low_mrt / two_pi * per_hz_to_ns, n.omega_high_mrt / two_pi);
    s += "[ptre]\n";
    s += "w_scale = " +
         join(c.ptre_variants, [](const PtreVariant& v) { return fmt::format("{:.17g}", v.w_scale); },
              ", ") +
         "\n";
    s += "t_scale = " +
         join(c.ptre_variants, [](const PtreVariant& v) { return fmt::format("{:.17g}", v.t_scale); },
              ", ") +
         "\n";
    s += fmt::format("pauli = {}\n\n", c.ptre_pauli);
    s += "[solver]\n";
    s += fmt::format("rtol = {:.17g}\natol = {:.17g}\ncoarse_tail = {}\nsample_stride_ns = {:.17g}\n",
                     c.solver.rtol, c.solver.atol, c.solver.coarse_tail, c.solver.sample_stride);
    return s;
}

}  // namespace lzx
