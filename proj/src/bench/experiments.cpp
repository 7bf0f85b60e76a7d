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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qknn/bench.hpp"
#include "qknn/errors.hpp"
#include "qknn/grover.hpp"
#include "qknn/knn.hpp"
#include "qknn/sim/ops.hpp"
#include "qknn/swap_test.hpp"

namespace qknn::bench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << v;
    return out.str();
}

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Text: return "text";
    }
    return "json";
}

// Everything both algorithms need from one seeded split.
struct PreparedSplit {
    std::uint64_t seed = 0;
    data::Split split;
    data::Normalized normalized;
    data::Binarized binarized;
};

PreparedSplit prepare(const data::Dataset& dataset, double fraction, std::uint64_t seed) {
    PreparedSplit p;
    p.seed = seed;
    p.split = data::split(dataset, data::SplitSpec{fraction, seed});
    p.normalized = data::min_max_normalize(p.split.train.x, p.split.test.x);
    p.binarized = data::binarize(p.normalized.train, p.normalized.test);
    return p;
}

quantum::TrainingSet make_training_set(const PreparedSplit& p) {
    quantum::TrainingSet ts;
    ts.num_features = static_cast<unsigned>(p.binarized.train.front().size());
    ts.num_classes = 2;
    for (std::size_t i = 0; i < p.binarized.train.size(); ++i) {
        ts.items.push_back({p.binarized.train[i], p.split.train.y[i]});
    }
    return ts;
}

AlgorithmRun base_run(const char* algorithm, const PreparedSplit& p) {
    AlgorithmRun run;
    run.algorithm = algorithm;
    run.seed = p.seed;
    run.split_hash = p.split.hash;
    run.train_size = p.split.train.size();
    run.test_size = p.split.test.size();
    return run;
}

AlgorithmRun run_knn(const PreparedSplit& p, unsigned k) {
    const auto start = Clock::now();
    AlgorithmRun run = base_run("knn", p);
    run.k = k;
    const classical::KnnModel model(p.normalized.train, p.split.train.y, classical::Metric::Euclidean, k);
    for (std::size_t i = 0; i < p.normalized.test.size(); ++i) {
        run.correct += model.predict(p.normalized.test[i]) == p.split.test.y[i];
    }
    run.accuracy = static_cast<double>(run.correct) / static_cast<double>(run.test_size);
    run.seconds = seconds_since(start);
    return run;
}

AlgorithmRun run_qknn(const PreparedSplit& p, const RunConfig& cfg, std::optional<unsigned> fixed_threshold) {
    const auto start = Clock::now();
    AlgorithmRun run = base_run("qknn", p);
    run.k = cfg.effective_k_for_auto();
    run.threshold = fixed_threshold;
    const quantum::TrainingSet ts = make_training_set(p);
    if (!fixed_threshold && run.k > ts.size()) {
        throw UsageError("--k-for-auto exceeds the training set size");
    }

    double acceptance_sum = 0.0;
    run.min_acceptance = 1.0;
    run.max_acceptance = 0.0;
    for (std::size_t i = 0; i < p.binarized.test.size(); ++i) {
        const BitVector& x = p.binarized.test[i];
        quantum::QknnConfig qc;
        qc.threshold = fixed_threshold ? *fixed_threshold : quantum::calibrate_threshold(ts, x, run.k, cfg.backend);
        qc.shots = cfg.shots;
        qc.backend = cfg.backend;
        qc.flag_mode = cfg.flag_mode;
        qc.fallback = cfg.fallback;
        qc.seed = derive_seed(p.seed, i);
        const auto result = quantum::classify(ts, x, qc);
        run.correct += result.predicted == p.split.test.y[i];
        acceptance_sum += result.acceptance_probability;
        run.min_acceptance = std::min(run.min_acceptance, result.acceptance_probability);
        run.max_acceptance = std::max(run.max_acceptance, result.acceptance_probability);
        ++run.effective_t_histogram[result.effective_threshold];
        run.fallbacks += result.effective_threshold != qc.threshold;
    }
    run.accuracy = static_cast<double>(run.correct) / static_cast<double>(run.test_size);
    run.mean_acceptance = acceptance_sum / static_cast<double>(run.test_size);
    run.seconds = seconds_since(start);
    return run;
}

struct LoadedData {
    data::Dataset dataset;
    data::CleaningReport cleaning;
};

LoadedData load(const RunConfig& cfg) {
    auto loaded = data::load_csv(cfg.data_path);
    return {data::select_mean_features(loaded.records), loaded.report};
}

std::vector<std::uint64_t> seeds_for(const RunConfig& cfg) {
    std::vector<std::uint64_t> seeds;
    for (unsigned r = 0; r < cfg.effective_reps(); ++r) seeds.push_back(cfg.seed + r);
    return seeds;
}

void add_summary(ExperimentReport& report, const std::string& algorithm) {
    std::vector<double> acc;
    for (const auto& run : report.runs) {
        if (run.algorithm == algorithm) acc.push_back(run.accuracy);
    }
    if (!acc.empty()) report.summary[algorithm] = summarize(acc);
}

void finish_sweep(std::vector<SweepPoint>& sweep) {
    for (auto& point : sweep) {
        point.mean_accuracy = std::accumulate(point.per_seed.begin(), point.per_seed.end(), 0.0) /
                              static_cast<double>(point.per_seed.size());
    }
}

nlohmann::json cleaning_json(const data::CleaningReport& c) {
    return {{"rows_read", c.rows_read},
            {"rows_kept", c.rows_kept},
            {"rows_dropped", c.rows_dropped},
            {"header_detected", c.header_detected},
            {"drop_reasons", c.drop_reasons}};
}

nlohmann::json sweep_json(const std::vector<SweepPoint>& sweep, const char* key) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : sweep) {
        out.push_back({{key, p.parameter}, {"mean_accuracy", p.mean_accuracy}, {"per_seed", p.per_seed}});
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

unsigned RunConfig::effective_reps() const { return reps.value_or(subcommand == "compare" ? 10U : 1U); }

void RunConfig::validate() const {
    static const std::vector<std::string> known = {"swap-test", "grover", "knn", "qknn", "compare"};
    if (std::find(known.begin(), known.end(), subcommand) == known.end()) {
        throw UsageError("unknown subcommand '" + subcommand + "'");
    }
    if (!(split > 0.0 && split < 1.0)) throw UsageError("--split must lie in (0, 1)");
    if (k < 1) throw UsageError("--k must be >= 1");
    if (k_range && (k_range->first < 1 || k_range->first > k_range->second)) {
        throw UsageError("--k-range must be A..B with 1 <= A <= B");
    }
    if (k_for_auto && *k_for_auto < 1) throw UsageError("--k-for-auto must be >= 1");
    if (threshold && *threshold < 1) throw UsageError("--threshold must be >= 1 or 'auto'");
    if (threshold && *threshold > data::kMeanFeatureCount + 1) {
        throw UsageError("--threshold must not exceed n + 1 = " + std::to_string(data::kMeanFeatureCount + 1));
    }
    if (threshold && !quantum::flag_mode_supports(flag_mode, data::kMeanFeatureCount, *threshold)) {
        throw UsageError("--flag-mode or-highbits needs a power-of-two threshold");
    }
    if (!threshold && flag_mode == quantum::FlagMode::OrHighBits) {
        throw UsageError("--flag-mode or-highbits needs a fixed power-of-two --threshold");
    }
    if (shots && *shots == 0) throw UsageError("--shots must be >= 1 or 'exact'");
    if (reps && *reps == 0) throw UsageError("--reps must be >= 1");
    if (subcommand == "grover") {
        if (grover_qubits < 1 || grover_qubits > grover::kMaxGroverQubits) {
            throw UsageError("--qubits must lie in [1, " + std::to_string(grover::kMaxGroverQubits) + "]");
        }
        if (marked >> grover_qubits != 0) throw UsageError("--marked out of range for --qubits");
        if (iterations && *iterations > (1U << grover_qubits)) throw UsageError("--iterations exceeds 2^n");
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j = {{"subcommand", subcommand}, {"format", to_string(format)}};
    if (subcommand == "swap-test") {
        j["x"] = state_x;
        j["y"] = state_y;
        j["shots"] = shots ? nlohmann::json(*shots) : nlohmann::json("exact");
        j["seed"] = seed;
        return j;
    }
    if (subcommand == "grover") {
        j["qubits"] = grover_qubits;
        j["marked"] = marked;
        j["iterations"] = iterations ? nlohmann::json(*iterations) : nlohmann::json("optimal");
        j["seed"] = seed;
        return j;
    }
    j["data"] = data_path.generic_string();
    j["seed"] = seed;
    j["split"] = split;
    j["reps"] = effective_reps();
    j["k"] = k;
    if (k_range) j["k_range"] = {k_range->first, k_range->second};
    if (subcommand != "knn") {
        j["threshold"] = threshold ? nlohmann::json(*threshold) : nlohmann::json("auto");
        j["k_for_auto"] = effective_k_for_auto();
        j["shots"] = shots ? nlohmann::json(*shots) : nlohmann::json("exact");
        j["backend"] = quantum::to_string(backend);
        j["flag_mode"] = quantum::to_string(flag_mode);
        j["fallback"] = fallback;
        j["t_sweep"] = t_sweep;
    }
    return j;
}

AccuracySummary summarize(const std::vector<double>& values) {
    AccuracySummary s;
    if (values.empty()) return s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    return s;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json runs_json = nlohmann::json::array();
    nlohmann::json run_seconds = nlohmann::json::array();
    for (const auto& r : runs) {
        nlohmann::json j = {{"algorithm", r.algorithm},     {"seed", r.seed},
                            {"split_hash", hex64(r.split_hash)}, {"train_size", r.train_size},
                            {"test_size", r.test_size},     {"correct", r.correct},
                            {"accuracy", r.accuracy},       {"k", r.k}};
        if (r.algorithm == "qknn") {
            j["threshold"] = r.threshold ? nlohmann::json(*r.threshold) : nlohmann::json("auto");
            j["mean_acceptance"] = r.mean_acceptance;
            j["min_acceptance"] = r.min_acceptance;
            j["max_acceptance"] = r.max_acceptance;
            nlohmann::json hist = nlohmann::json::object();
            for (const auto& [t, count] : r.effective_t_histogram) hist[std::to_string(t)] = count;
            j["effective_t_histogram"] = hist;
            j["fallbacks"] = r.fallbacks;
        }
        runs_json.push_back(std::move(j));
        run_seconds.push_back({{"algorithm", r.algorithm}, {"seed", r.seed}, {"seconds", r.seconds}});
    }
    nlohmann::json summary_json = nlohmann::json::object();
    for (const auto& [name, s] : summary) {
        summary_json[name] = {{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
    }
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"tool", "qknn-lab"},
                        {"tool_version", kToolVersion},
                        {"subcommand", subcommand},
                        {"config", config.to_json()},
                        {"cleaning", cleaning_json(cleaning)},
                        {"runs", runs_json},
                        {"summary", summary_json}};
    if (subcommand == "compare") j["paired_differences"] = paired_differences;
    if (!k_sweep.empty()) {
        j["k_sweep"] = sweep_json(k_sweep, "k");
        j["best_k"] = best_k ? nlohmann::json(*best_k) : nlohmann::json(nullptr);
    }
    if (!t_sweep.empty()) j["t_sweep"] = sweep_json(t_sweep, "t");
    if (config.include_timing) j["timing"] = {{"total_seconds", total_seconds}, {"runs", run_seconds}};
    return j;
}

// ---------------------------------------------------------------------------
// Demos

sim::SparseState parse_state_spec(const std::string& spec) {
    if (spec.empty()) throw UsageError("empty state spec");
    const bool product = spec.find_first_not_of("01+-") == std::string::npos;
    if (product) {
        if (spec.size() > 16) throw UsageError("state spec too wide");
        auto single = [](char c) {
            auto q = sim::SparseState::basis(1, (c == '1' || c == '-') ? 1 : 0);
            if (c == '+' || c == '-') q.apply(sim::Gate::h(0));
            return q;
        };
        sim::SparseState state = single(spec[0]);
        for (std::size_t i = 1; i < spec.size(); ++i) state = sim::tensor(state, single(spec[i]));
        return state;
    }
    std::vector<sim::Amplitude> amps;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto colon = token.find(':');
        try {
            std::size_t used = 0;
            const double re = std::stod(token.substr(0, colon), &used);
            if (used != token.substr(0, colon).size()) throw std::invalid_argument(token);
            double im = 0.0;
            if (colon != std::string::npos) {
                const std::string im_text = token.substr(colon + 1);
                im = std::stod(im_text, &used);
                if (used != im_text.size()) throw std::invalid_argument(token);
            }
            if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument(token);
            amps.emplace_back(re, im);
        } catch (const std::exception&) {
            throw UsageError("bad amplitude '" + token + "' in state spec");
        }
    }
    const std::size_t dim = amps.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw UsageError("amplitude list length must be a power of two >= 2");
    auto state = sim::SparseState::from_dense(amps);
    if (state.norm_squared() < 1e-24) throw UsageError("state spec has zero norm");
    state.normalize();
    return state;
}

nlohmann::json cmd_swap_test(const RunConfig& cfg) {
    const auto start = Clock::now();
    const auto x = parse_state_spec(cfg.state_x);
    const auto y = parse_state_spec(cfg.state_y);
    if (x.num_qubits() != y.num_qubits()) throw UsageError("--x and --y must have the same qubit count");
    const double p0 = swap::swap_test_p0(x, y);
    const auto fid = swap::fidelity_from_p0(p0);
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"tool", "qknn-lab"},
                        {"tool_version", kToolVersion},
                        {"subcommand", "swap-test"},
                        {"config", cfg.to_json()},
                        {"qubits_per_register", x.num_qubits()},
                        {"p0", p0},
                        {"fidelity", fid.fidelity},
                        {"overlap_squared", std::norm(sim::inner_product(x, y))},
                        {"quantum_euclidean_distance", swap::quantum_euclidean_distance(fid.fidelity)}};
    if (cfg.shots) {
        Rng rng(cfg.seed);
        const auto sample = swap::swap_test_sampled(x, y, *cfg.shots, rng);
        j["sampled"] = {{"shots", sample.shots},
                        {"ancilla_zero", sample.ancilla_zero},
                        {"p0_estimate", sample.p0_estimate},
                        {"fidelity_estimate", sample.fidelity.fidelity},
                        {"clamped", sample.fidelity.clamped}};
    }
    if (cfg.include_timing) j["timing"] = {{"total_seconds", seconds_since(start)}};
    return j;
}

nlohmann::json cmd_grover(const RunConfig& cfg) {
    const auto start = Clock::now();
    grover::GroverSpec spec;
    spec.num_qubits = cfg.grover_qubits;
    spec.marked = cfg.marked;
    spec.iterations = cfg.iterations.value_or(grover::optimal_iterations(cfg.grover_qubits));
    Rng rng(cfg.seed);
    const auto result = grover::grover_search(spec, rng);
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"tool", "qknn-lab"},
                        {"tool_version", kToolVersion},
                        {"subcommand", "grover"},
                        {"config", cfg.to_json()},
                        {"iterations", spec.iterations},
                        {"optimal_iterations", grover::optimal_iterations(cfg.grover_qubits)},
                        {"marked_probability", result.probabilities[spec.marked]},
                        {"probabilities", result.probabilities},
                        {"sampled", result.sampled}};
    if (cfg.include_timing) j["timing"] = {{"total_seconds", seconds_since(start)}};
    return j;
}

// ---------------------------------------------------------------------------
// Experiments

ExperimentReport cmd_knn(const RunConfig& cfg) {
    const auto start = Clock::now();
    const auto loaded = load(cfg);
    ExperimentReport report;
    report.subcommand = "knn";
    report.config = cfg;
    report.cleaning = loaded.cleaning;

    std::vector<unsigned> k_values;
    if (cfg.k_range) {
        for (unsigned k = cfg.k_range->first; k <= cfg.k_range->second; ++k) k_values.push_back(k);
        for (unsigned k : k_values) report.k_sweep.push_back({k, 0.0, {}});
    }
    for (auto seed : seeds_for(cfg)) {
        const auto p = prepare(loaded.dataset, cfg.split, seed);
        if (cfg.k > p.split.train.size()) throw UsageError("--k exceeds the training set size");
        report.runs.push_back(run_knn(p, cfg.k));
        if (!k_values.empty()) {
            if (k_values.back() > p.split.train.size()) throw UsageError("--k-range exceeds the training set size");
            const auto sweep = classical::k_sweep(p.normalized.train, p.split.train.y, p.normalized.test,
                                                  p.split.test.y, k_values, classical::Metric::Euclidean);
            for (std::size_t i = 0; i < sweep.size(); ++i) report.k_sweep[i].per_seed.push_back(sweep[i].accuracy);
        }
    }
    add_summary(report, "knn");
    if (!report.k_sweep.empty()) {
        finish_sweep(report.k_sweep);
        const auto best = std::max_element(report.k_sweep.begin(), report.k_sweep.end(),
                                           [](const auto& a, const auto& b) { return a.mean_accuracy < b.mean_accuracy; });
        report.best_k = best->parameter;
    }
    report.total_seconds = seconds_since(start);
    return report;
}

ExperimentReport cmd_qknn(const RunConfig& cfg) {
    const auto start = Clock::now();
    const auto loaded = load(cfg);
    ExperimentReport report;
    report.subcommand = "qknn";
    report.config = cfg;
    report.cleaning = loaded.cleaning;

    const unsigned max_t = static_cast<unsigned>(data::kMeanFeatureCount) + 1;
    if (cfg.t_sweep) {
        for (unsigned t = 1; t <= max_t; ++t) {
            if (quantum::flag_mode_supports(cfg.flag_mode, data::kMeanFeatureCount, t)) {
                report.t_sweep.push_back({t, 0.0, {}});
            }
        }
    }
    for (auto seed : seeds_for(cfg)) {
        const auto p = prepare(loaded.dataset, cfg.split, seed);
        report.runs.push_back(run_qknn(p, cfg, cfg.threshold));
        for (auto& point : report.t_sweep) point.per_seed.push_back(run_qknn(p, cfg, point.parameter).accuracy);
    }
    add_summary(report, "qknn");
    finish_sweep(report.t_sweep);
    report.total_seconds = seconds_since(start);
    return report;
}

ExperimentReport cmd_compare(const RunConfig& cfg) {
    const auto start = Clock::now();
    const auto loaded = load(cfg);
    ExperimentReport report;
    report.subcommand = "compare";
    report.config = cfg;
    report.cleaning = loaded.cleaning;
    for (auto seed : seeds_for(cfg)) {
        const auto p = prepare(loaded.dataset, cfg.split, seed);
        if (cfg.k > p.split.train.size()) throw UsageError("--k exceeds the training set size");
        auto knn = run_knn(p, cfg.k);
        auto qknn = run_qknn(p, cfg, cfg.threshold);
        if (knn.split_hash != qknn.split_hash) throw InternalError("compare used different splits");
        report.paired_differences.push_back(qknn.accuracy - knn.accuracy);
        report.runs.push_back(std::move(knn));
        report.runs.push_back(std::move(qknn));
    }
    add_summary(report, "knn");
    add_summary(report, "qknn");
    report.total_seconds = seconds_since(start);
    return report;
}

}  // namespace qknn::bench
