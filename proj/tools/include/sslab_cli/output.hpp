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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "sslab_cli/config.hpp"

namespace sslab::cli {

// Version string baked in at configure time (git describe, or the project version).
const char* version_string();

// Formats a double with 12 significant digits; nan/inf as "nan", "inf", "-inf".
std::string format_number(double x);

// CSV with a header row, LF line endings, %.12g numbers.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::FILE* file_ = nullptr;
    std::filesystem::path path_;
    std::vector<std::string> columns_;
};

void write_json(const std::filesystem::path& path, const json& value);

struct Failure {
    json point;
    std::string error;
    std::string message;
};

// Thread-safe failure collector; entries are sorted by insertion key on export.
class FailureLog {
public:
    void record(long key, json point, const std::exception& e);
    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }
    json to_json() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::pair<long, Failure>> entries_;
};

// Demangled-free error class name for the failure manifest.
std::string error_kind(const std::exception& e);

// One run directory <outdir>/<experiment>/<timestamp>/ plus the metadata that
// goes into every sidecar.
class Run {
public:
    Run(std::string experiment, json config, int jobs);

    const std::filesystem::path& dir() const { return dir_; }
    const json& config() const { return config_; }
    int jobs() const { return jobs_; }
    FailureLog& failures() { return failures_; }

    // Opens <name>.csv; the sidecar is written by finish().
    CsvWriter& dataset(const std::string& name, const std::vector<std::string>& columns, json description = {});
    // Extra non-tabular output (e.g. delta peaks).
    void attach_json(const std::string& name, const json& value);
    // Results copied into every sidecar under "results".
    json& results() { return results_; }

    // Closes datasets, writes sidecars, run.json and (if needed) failures.json.
    // Returns the process exit code.
    int finish();

private:
    std::string experiment_;
    json config_;
    int jobs_;
    std::filesystem::path dir_;
    std::string timestamp_;
    std::chrono::steady_clock::time_point start_;
    FailureLog failures_;
    json results_ = json::object();
    struct Entry {
        std::string name;
        std::unique_ptr<CsvWriter> writer;
        json description;
    };
    std::vector<Entry> datasets_;
    std::vector<std::string> attachments_;
};

}  // namespace sslab::cli
