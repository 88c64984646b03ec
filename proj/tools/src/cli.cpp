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

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "experiments_impl.hpp"

namespace sslab::cli {

RunOutcome run_experiment(const std::string& name, const json& config, int jobs) {
    validate_config(name, config);
    if (jobs < 1) throw UsageError("--jobs must be >= 1");
    if (name == "phase-scan") return phase_scan(config, jobs);
    if (name == "gap") return gap_map(config, jobs);
    if (name == "liouville-spectrum") return liouville_spectrum(config, jobs);
    if (name == "mean-field-flow") return mean_field_flow(config, jobs);
    if (name == "trajectory-freezing") return trajectory_freezing(config, jobs);
    if (name == "counting") return counting_run(config, jobs);
    if (name == "tilted-scgf") return tilted_scgf(config, jobs);
    if (name == "emission") return emission_run(config, jobs);
    return squeezing(config, jobs);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"sslab: driven-dissipative collective spin experiments"};
    std::string experiment, config_path, outdir;
    std::vector<std::string> overrides;
    int jobs = 1;
    bool print_config = false, list = false, version = false;
    app.add_option("experiment", experiment, "experiment name (see --list)");
    app.add_option("overrides", overrides, "config overrides, key.path=value");
    app.add_option("--config", config_path, "JSON config or dataset sidecar; defaults to the built-in preset");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--outdir", outdir, "output root (same as outdir=...)");
    app.add_flag("--print-config", print_config, "print the resolved config and exit");
    app.add_flag("--list", list, "list experiments and exit");
    app.add_flag("--version", version, "print the version and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (version) {
        std::printf("sslab %s\n", version_string());
        return 0;
    }
    if (list) {
        for (const auto& n : experiment_names()) std::printf("%s\n", n.c_str());
        return 0;
    }
    try {
        if (!is_experiment(experiment)) {
            std::fprintf(stderr, "sslab: unknown experiment '%s'\n%s", experiment.c_str(), app.help().c_str());
            std::fprintf(stderr, "experiments:");
            for (const auto& n : experiment_names()) std::fprintf(stderr, " %s", n.c_str());
            std::fprintf(stderr, "\n");
            return 2;
        }
        json config = preset(experiment);
        if (!config_path.empty()) merge(config, load_config(config_path));
        for (const auto& o : overrides) apply_override(config, o);
        if (!outdir.empty()) config["outdir"] = outdir;
        config["experiment"] = experiment;
        if (print_config) {
            std::printf("%s\n", config.dump(2).c_str());
            return 0;
        }
        const auto outcome = run_experiment(experiment, config, jobs);
        std::printf("%s\n", outcome.dir.string().c_str());
        if (outcome.exit_code != 0)
            std::fprintf(stderr, "sslab: some points failed, see %s\n", (outcome.dir / "failures.json").string().c_str());
        return outcome.exit_code;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "sslab: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "sslab: %s\n", e.what());
        return 1;
    }
}

}  // namespace sslab::cli
