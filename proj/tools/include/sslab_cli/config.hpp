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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "sslab/types.hpp"

namespace sslab::cli {

using json = nlohmann::ordered_json;

// Bad configuration or command line; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

// Built-in preset for `experiment`; every key an experiment reads is present.
json preset(const std::string& experiment);

// Reads a config file. A dataset sidecar is accepted as well: its "config"
// member is returned, which makes every sidecar a re-runnable config.
json load_config(const std::string& path);

// Applies `a.b.c=value`. The value is parsed as JSON when possible and kept
// as a string otherwise. Intermediate objects are created on demand.
void apply_override(json& config, const std::string& assignment);

// Recursively overlays `patch` onto `base`.
void merge(json& base, const json& patch);

// Number, or a string such as "pi/8", "3*pi/8", "0.25pi", "-pi/4".
double parse_value(const json& v, const std::string& where);

// A grid is a number, an array of values, {"start","stop","step"} or
// {"start","stop","num"}. Throws UsageError if the result is empty.
std::vector<double> parse_grid(const json& v, const std::string& where);

// Typed lookup of a dotted path with a UsageError naming the path on failure.
const json& at(const json& config, const std::string& path);
double get_double(const json& config, const std::string& path);
long get_long(const json& config, const std::string& path);
bool get_bool(const json& config, const std::string& path);
std::string get_string(const json& config, const std::string& path);
std::vector<double> get_grid(const json& config, const std::string& path);
bool has(const json& config, const std::string& path);

// model.{N, omega, theta, gamma}; omega and theta must be single values here.
ModelParams model_params(const json& config);

// Checks invariants shared by all experiments: known name, nonempty grids,
// fixed seed whenever trajectories are requested.
void validate_config(const std::string& experiment, const json& config);

}  // namespace sslab::cli
