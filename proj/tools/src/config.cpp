// Copyright 2026 The sslab Authors
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

#include "sslab_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sslab::cli {

namespace {

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string item;
    while (std::getline(ss, item, '.')) {
        if (item.empty()) throw UsageError("empty component in key '" + path + "'");
        parts.push_back(item);
    }
    if (parts.empty()) throw UsageError("empty key");
    return parts;
}

const json* find(const json& config, const std::string& path) {
    const json* node = &config;
    for (const auto& part : split_path(path)) {
        if (!node->is_object() || !node->contains(part)) return nullptr;
        node = &(*node)[part];
    }
    return node;
}

json model_block(int n, double omega, const json& theta) {
    return {{"N", n}, {"omega", omega}, {"theta", theta}, {"gamma", 1.0}};
}

json range(double start, double stop, double step) { return {{"start", start}, {"stop", stop}, {"step", step}}; }

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"phase-scan",          "gap",      "liouville-spectrum",
                                                   "mean-field-flow",     "trajectory-freezing", "counting",
                                                   "tilted-scgf",         "emission", "squeezing"};
    return names;
}

bool is_experiment(const std::string& name) {
    const auto& n = experiment_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

json preset(const std::string& experiment) {
    json c;
    c["experiment"] = experiment;
    c["outdir"] = "runs";
    if (experiment == "phase-scan") {
        c["model"] = model_block(50, 0.0, "pi/8");
        c["scan"] = {{"omega", range(0.0, 1.5, 0.05)}, {"theta", json::array({"pi/8"})}};
    } else if (experiment == "gap") {
        c["model"] = model_block(100, 0.0, 0.0);
        c["scan"] = {{"omega", range(0.0, 1.6, 0.2)}, {"theta", range(0.0, 1.5707963267948966, 0.19634954084936207)}};
        c["run"] = {{"dense_max_N", 30}};
    } else if (experiment == "liouville-spectrum") {
        c["model"] = model_block(20, 200.0, 0.0);
        c["run"] = {{"compare_rwa", true}};
    } else if (experiment == "mean-field-flow") {
        c["model"] = model_block(1, 1.2, 0.0);
        c["flow"] = {{"Theta0", json::array({0.3, 0.8, 1.3, 1.8, 2.3})},
                     {"Phi0", json::array({0.0, "pi/2"})},
                     {"t_max", 50.0},
                     {"step", 1e-3},
                     {"sample_every", 100},
                     {"return_tol", 1e-3}};
    } else if (experiment == "trajectory-freezing") {
        c["model"] = model_block(10, 0.8, "pi/4");
        c["initial"] = {{"m", json::array({0, 3, 5})}, {"amplitude", json::array({1.0, 1.0, 1.0})}};
        c["run"] = {{"n_traj", 600},    {"t_max", 110.0},      {"dt", 1e-3},
                    {"sample_dt", 0.1}, {"base_seed", 20260101}, {"save_trajectories", 3}};
        c["freezing"] = {{"threshold", 0.99}, {"confirmation_window", 10.0}, {"fit_start", 0.1}, {"fit_floor", 1e-20}};
    } else if (experiment == "counting") {
        c["model"] = model_block(20, 0.8, "pi/4");
        c["initial"] = {{"m", json::array({1, 2, 3})}, {"weight", json::array({1.0, 1.0, 1.0})}};
        c["run"] = {{"horizon", 3000.0}, {"n_traj", 800},     {"dt", 0.01},
                    {"base_seed", 20260101}, {"exact", true}, {"fourier", false}};
    } else if (experiment == "tilted-scgf") {
        c["model"] = model_block(20, 0.8, "pi/4");
        c["scan"] = {{"N", json::array({20})}, {"s", range(-1.0, 1.0, 0.01)}};
        c["run"] = {{"h", 1e-4}, {"activity_h", 1e-3}, {"k_points", 4001}};
    } else if (experiment == "emission") {
        c["model"] = model_block(50, 1.2, 0.0);
        c["spectrum"] = {{"omega", range(-3.0, 3.0, 0.002)},
                         {"gamma_det", 0.01},
                         {"method", "auto"},
                         {"dense_max_N", 50},
                         {"peak_min_rel", 0.05}};
        c["initial"] = {{"m_z", "down"}};
    } else if (experiment == "squeezing") {
        c["model"] = model_block(100, 0.0, 0.0);
        c["scan"] = {{"N", json::array({20, 50, 100})}, {"theta", range(0.0, 0.7853981633974483, 0.039269908169872414)}};
    } else {
        throw UsageError("unknown experiment '" + experiment + "'");
    }
    return c;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config '" + path + "'");
    json c;
    try {
        c = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
    if (!c.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
    if (c.contains("schema") && c.contains("config")) return c["config"];
    return c;
}

void merge(json& base, const json& patch) {
    if (!patch.is_object() || !base.is_object()) {
        base = patch;
        return;
    }
    for (const auto& [key, value] : patch.items()) {
        if (base.contains(key) && base[key].is_object() && value.is_object())
            merge(base[key], value);
        else
            base[key] = value;
    }
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("override '" + assignment + "' is not key=value");
    const auto parts = split_path(assignment.substr(0, eq));
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* node = &config;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        json& next = (*node)[parts[i]];
        if (!next.is_object()) next = json::object();
        node = &next;
    }
    (*node)[parts.back()] = value;
}

double parse_value(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw UsageError(where + ": expected a number");
    std::string s = v.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    const auto p = s.find("pi");
    if (p == std::string::npos) {
        size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw UsageError(where + ": cannot parse '" + s + "'");
        return x;
    }
    std::string coef = s.substr(0, p);
    std::string rest = s.substr(p + 2);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double c = 1.0;
    if (coef == "-")
        c = -1.0;
    else if (!coef.empty() && coef != "+")
        c = parse_value(coef, where);
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw UsageError(where + ": cannot parse '" + s + "'");
        d = parse_value(rest.substr(1), where);
    }
    return c * PI / d;
}

std::vector<double> parse_grid(const json& v, const std::string& where) {
    std::vector<double> out;
    if (v.is_array()) {
        for (size_t i = 0; i < v.size(); ++i) out.push_back(parse_value(v[i], where + "[" + std::to_string(i) + "]"));
    } else if (v.is_object()) {
        if (!v.contains("start") || !v.contains("stop"))
            throw UsageError(where + ": a range needs 'start' and 'stop'");
        const double a = parse_value(v["start"], where + ".start");
        const double b = parse_value(v["stop"], where + ".stop");
        if (v.contains("num")) {
            const long n = v["num"].get<long>();
            if (n < 1) throw UsageError(where + ".num must be >= 1");
            for (long i = 0; i < n; ++i)
                out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        } else if (v.contains("step")) {
            const double h = parse_value(v["step"], where + ".step");
            if (!(h > 0.0)) throw UsageError(where + ".step must be > 0");
            // Integer indexing keeps grids identical across platforms.
            const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
            for (long i = 0; i <= n; ++i) out.push_back(a + h * static_cast<double>(i));
        } else {
            throw UsageError(where + ": a range needs 'step' or 'num'");
        }
    } else {
        out.push_back(parse_value(v, where));
    }
    if (out.empty()) throw UsageError(where + ": grid is empty");
    for (double x : out)
        if (!std::isfinite(x)) throw UsageError(where + ": non-finite grid value");
    return out;
}

bool has(const json& config, const std::string& path) { return find(config, path) != nullptr; }

const json& at(const json& config, const std::string& path) {
    const json* node = find(config, path);
    if (!node) throw UsageError("missing config key '" + path + "'");
    return *node;
}

double get_double(const json& config, const std::string& path) { return parse_value(at(config, path), path); }

long get_long(const json& config, const std::string& path) {
    const json& v = at(config, path);
    if (v.is_number_integer()) return v.get<long>();
    const double x = parse_value(v, path);
    if (x != std::floor(x)) throw UsageError(path + ": expected an integer");
    return static_cast<long>(x);
}

bool get_bool(const json& config, const std::string& path) {
    const json& v = at(config, path);
    if (!v.is_boolean()) throw UsageError(path + ": expected true or false");
    return v.get<bool>();
}

std::string get_string(const json& config, const std::string& path) {
    const json& v = at(config, path);
    if (!v.is_string()) throw UsageError(path + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> get_grid(const json& config, const std::string& path) { return parse_grid(at(config, path), path); }

ModelParams model_params(const json& config) {
    ModelParams p;
    p.n_spins = static_cast<int>(get_long(config, "model.N"));
    p.omega = get_double(config, "model.omega");
    p.theta = get_double(config, "model.theta");
    p.gamma = get_double(config, "model.gamma");
    try {
        validate(p);
    } catch (const std::exception& e) {
        throw UsageError(std::string("model: ") + e.what());
    }
    return p;
}

void validate_config(const std::string& experiment, const json& config) {
    if (!is_experiment(experiment)) throw UsageError("unknown experiment '" + experiment + "'");
    if (!config.is_object()) throw UsageError("config must be a JSON object");
    get_string(config, "outdir");
    model_params(config);
    for (const char* block : {"scan", "spectrum"})
        if (config.contains(block))
            for (const auto& [key, value] : config[block].items())
                if (key == "omega" || key == "theta" || key == "s" || key == "N")
                    parse_grid(value, std::string(block) + "." + key);
    if (has(config, "run.n_traj") && get_long(config, "run.n_traj") > 0) {
        if (!has(config, "run.base_seed")) throw UsageError("run.base_seed is required when run.n_traj > 0");
        if (get_long(config, "run.base_seed") < 0) throw UsageError("run.base_seed must be >= 0");
    }
}

}  // namespace sslab::cli
