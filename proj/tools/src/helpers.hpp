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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sslab/parallel.hpp"
#include "sslab/sslab.hpp"
#include "sslab_cli/config.hpp"
#include "sslab_cli/output.hpp"

namespace sslab::cli {

inline constexpr double NaN = std::numeric_limits<double>::quiet_NaN();

// Basis index of m in an ascending ladder -J ... J; UsageError when m is not on it.
int ladder_index(double m, const ModelParams& p, const std::string& where);

// Initial S_z eigenstate from "down", "up" or a number m_z.
Operator initial_sz_state(const json& config, const ModelParams& p);

// Unique steady state; at the strong-symmetry point the S_x-sector projection
// of the configured initial state (coherences between sectors decay, sector
// populations are conserved).
Operator steady_state_for(const ModelParams& p, const json& config);

double expect(const Operator& op, const Operator& rho);

json point_json(const ModelParams& p);

// Failure-manifest point: model parameters, the failing quantity and extras.
json failure_point(const ModelParams& p, const std::string& quantity, const json& extra = json::object());

}  // namespace sslab::cli
