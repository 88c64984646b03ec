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

#include "helpers.hpp"
#include "sslab_cli/experiments.hpp"

namespace sslab::cli {

RunOutcome phase_scan(const json& c, int jobs);
RunOutcome gap_map(const json& c, int jobs);
RunOutcome liouville_spectrum(const json& c, int jobs);
RunOutcome squeezing(const json& c, int jobs);
RunOutcome mean_field_flow(const json& c, int jobs);
RunOutcome trajectory_freezing(const json& c, int jobs);
RunOutcome counting_run(const json& c, int jobs);
RunOutcome tilted_scgf(const json& c, int jobs);
RunOutcome emission_run(const json& c, int jobs);

}  // namespace sslab::cli
