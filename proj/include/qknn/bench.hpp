// Copyright 2026 The qknn-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qknn/data.hpp"
#include "qknn/qknn.hpp"
#include "qknn/sim/state.hpp"

namespace qknn::bench {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitInternal = 4 };

enum class OutputFormat { Json, Csv, Text };

/// Thrown for invalid flag values and inconsistent option combinations.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string subcommand;
    std::filesystem::path data_path;
    std::uint64_t seed = 42;
    double split = 0.65;
    unsigned k = 13;
    std::optional<std::pair<unsigned, unsigned>> k_range;
    std::optional<unsigned> threshold;  // nullopt: calibrate per test point
    std::optional<unsigned> k_for_auto;  // defaults to k
    bool t_sweep = false;
    std::optional<std::uint64_t> shots;  // nullopt: exact
    quantum::Backend backend = quantum::Backend::Sparse;
    quantum::FlagMode flag_mode = quantum::FlagMode::OffsetCarry;
    bool fallback = true;
    std::optional<unsigned> reps;  // compare defaults to 10, everything else to 1
    OutputFormat format = OutputFormat::Json;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> sweep_out;
    bool include_timing = true;

    // swap-test
    std::string state_x = "0";
    std::string state_y = "0";
    // grover
    unsigned grover_qubits = 2;
    std::uint64_t marked = 3;
    std::optional<unsigned> iterations;

    [[nodiscard]] unsigned effective_reps() const;
    [[nodiscard]] unsigned effective_k_for_auto() const { return k_for_auto.value_or(k); }
    /// Throws UsageError.
    void validate() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// One algorithm evaluated on one seeded split.
struct AlgorithmRun {
    std::string algorithm;  // "knn" or "qknn"
    std::uint64_t seed = 0;
    std::uint64_t split_hash = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    unsigned k = 0;
    // qknn only
    std::optional<unsigned> threshold;
    double mean_acceptance = 0.0;
    double min_acceptance = 0.0;
    double max_acceptance = 0.0;
    std::map<unsigned, std::size_t> effective_t_histogram;
    std::size_t fallbacks = 0;
    double seconds = 0.0;
};

struct AccuracySummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, 0 for a single run
    double min = 0.0;
    double max = 0.0;
};

AccuracySummary summarize(const std::vector<double>& values);

struct SweepPoint {
    unsigned parameter = 0;  // k or t
    double mean_accuracy = 0.0;
    std::vector<double> per_seed;
};

struct ExperimentReport {
    std::string subcommand;
    RunConfig config;
    data::CleaningReport cleaning;
    std::vector<AlgorithmRun> runs;
    std::map<std::string, AccuracySummary> summary;
    std::vector<double> paired_differences;  // qknn - knn per seed (compare only)
    std::vector<SweepPoint> k_sweep;
    std::optional<unsigned> best_k;
    std::vector<SweepPoint> t_sweep;
    double total_seconds = 0.0;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Parses a swap-test input: a string over {0,1,+,-} (character i is qubit i)
/// or comma-separated amplitudes "re" / "re:im", normalized.
sim::SparseState parse_state_spec(const std::string& spec);

nlohmann::json cmd_swap_test(const RunConfig& cfg);
nlohmann::json cmd_grover(const RunConfig& cfg);
ExperimentReport cmd_knn(const RunConfig& cfg);
ExperimentReport cmd_qknn(const RunConfig& cfg);
ExperimentReport cmd_compare(const RunConfig& cfg);

/// Serialized report in `format`. The JSON form is schema-versioned; the CSV
/// form has one row per seed x algorithm (key,value rows for the demos).
std::string render_report(const nlohmann::json& report, OutputFormat format);

/// Writes to `path`, or to `fallback` when no path is given.
void emit_report(const nlohmann::json& report, OutputFormat format, const std::optional<std::filesystem::path>& path,
                 std::ostream& fallback);

/// Sweep tables as CSV: sweep,<k or t>,mean_accuracy,seed_<s>...
std::string render_sweep_csv(const nlohmann::json& report);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Single-line machine-parsable error: error: code=<kind> exit=<n> message="<text>"
std::string format_error_line(const std::string& kind, int exit_code, const std::string& message);

}  // namespace qknn::bench
