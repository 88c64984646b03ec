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

#include "sslab_cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <memory>

#include "sslab/errors.hpp"

#ifndef SSLAB_VERSION_STRING
#define SSLAB_VERSION_STRING "unknown"
#endif

namespace sslab::cli {

const char* version_string() { return SSLAB_VERSION_STRING; }

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), columns_(columns) {
    file_ = std::fopen(path.string().c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot write '" + path.string() + "'");
    for (size_t i = 0; i < columns.size(); ++i) std::fprintf(file_, "%s%s", i ? "," : "", columns[i].c_str());
    std::fputc('\n', file_);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw std::logic_error(path_.filename().string() + ": row has " + std::to_string(values.size()) +
                               " values for " + std::to_string(columns_.size()) + " columns");
    for (size_t i = 0; i < values.size(); ++i) std::fprintf(file_, "%s%s", i ? "," : "", format_number(values[i]).c_str());
    std::fputc('\n', file_);
}

void write_json(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << value.dump(2) << '\n';
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const InvalidParameter*>(&e)) return "InvalidParameter";
    if (dynamic_cast<const ContractViolation*>(&e)) return "ContractViolation";
    if (dynamic_cast<const OutOfValidity*>(&e)) return "OutOfValidity";
    if (dynamic_cast<const SingularityError*>(&e)) return "SingularityError";
    if (dynamic_cast<const DefectiveSpectrum*>(&e)) return "DefectiveSpectrum";
    if (dynamic_cast<const DegenerateDistribution*>(&e)) return "DegenerateDistribution";
    if (dynamic_cast<const StepSizeError*>(&e)) return "StepSizeError";
    if (dynamic_cast<const ConsistencyError*>(&e)) return "ConsistencyError";
    if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "std::exception";
}

void FailureLog::record(long key, json point, const std::exception& e) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.push_back({key, {std::move(point), error_kind(e), e.what()}});
}

json FailureLog::to_json() const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto sorted = entries_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    json out = json::array();
    for (const auto& [key, f] : sorted) out.push_back({{"point", f.point}, {"error", f.error}, {"message", f.message}});
    return out;
}

namespace {

std::string utc_stamp(std::time_t t, const char* format) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), format, &tm);
    return buf;
}

}  // namespace

Run::Run(std::string experiment, json config, int jobs)
    : experiment_(std::move(experiment)), config_(std::move(config)), jobs_(jobs), start_(std::chrono::steady_clock::now()) {
    const std::time_t now = std::time(nullptr);
    timestamp_ = utc_stamp(now, "%Y-%m-%dT%H:%M:%SZ");
    const std::filesystem::path base =
        std::filesystem::path(get_string(config_, "outdir")) / experiment_ / utc_stamp(now, "%Y%m%dT%H%M%SZ");
    dir_ = base;
    for (int k = 2; std::filesystem::exists(dir_); ++k) dir_ = base.string() + "-" + std::to_string(k);
    std::filesystem::create_directories(dir_);
}

CsvWriter& Run::dataset(const std::string& name, const std::vector<std::string>& columns, json description) {
    datasets_.push_back({name, std::make_unique<CsvWriter>(dir_ / (name + ".csv"), columns), std::move(description)});
    return *datasets_.back().writer;
}

void Run::attach_json(const std::string& name, const json& value) {
    write_json(dir_ / (name + ".json"), value);
    attachments_.push_back(name + ".json");
}

int Run::finish() {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json files = json::array();
    for (auto& d : datasets_) {
        const auto columns = d.writer->columns();
        d.writer.reset();
        json side = {{"schema", "sslab.dataset/1"},
                     {"experiment", experiment_},
                     {"dataset", d.name},
                     {"file", d.name + ".csv"},
                     {"columns", columns},
                     {"description", d.description.is_null() ? json("") : d.description},
                     {"version", version_string()},
                     {"created_utc", timestamp_},
                     {"wall_time_s", wall},
                     {"jobs", jobs_},
                     {"failures", failures_.size()},
                     {"results", results_},
                     {"config", config_}};
        write_json(dir_ / (d.name + ".json"), side);
        files.push_back(d.name + ".csv");
    }
    for (const auto& a : attachments_) files.push_back(a);
    if (!failures_.empty()) {
        write_json(dir_ / "failures.json", {{"schema", "sslab.failures/1"}, {"failures", failures_.to_json()}});
        files.push_back("failures.json");
    }
    write_json(dir_ / "run.json", {{"schema", "sslab.run/1"},
                                   {"experiment", experiment_},
                                   {"version", version_string()},
                                   {"created_utc", timestamp_},
                                   {"wall_time_s", wall},
                                   {"jobs", jobs_},
                                   {"status", failures_.empty() ? "ok" : "failures"},
                                   {"files", files},
                                   {"results", results_},
                                   {"config", config_}});
    return failures_.empty() ? 0 : 1;
}

}  // namespace sslab::cli
