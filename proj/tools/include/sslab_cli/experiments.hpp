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

#include <filesystem>
#include <string>

#include "sslab_cli/config.hpp"

namespace sslab::cli {

struct RunOutcome {
    int exit_code = 0;
    std::filesystem::path dir;
};

// Runs one experiment with a fully resolved config. Throws UsageError for
// configuration problems found before any output is written.
RunOutcome run_experiment(const std::string& name, const json& config, int jobs);

// Entry point of the `sslab` executable; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace sslab::cli
