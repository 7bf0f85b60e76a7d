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

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qknn/bench.hpp"
#include "qknn/errors.hpp"

#ifndef QKNN_LAB_DEFAULT_DATA
#define QKNN_LAB_DEFAULT_DATA "data/wdbc.csv"
#endif

namespace qknn::bench {
namespace {

std::string fixed(double v, int precision = 4) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << v;
    return out.str();
}

std::string csv_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, csv_scalar(j));
    }
}

std::string render_csv(const nlohmann::json& report) {
    std::ostringstream out;
    if (!report.contains("runs")) {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        out << "key,value\n";
        for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
        return out.str();
    }
    out << "seed,algorithm,split_hash,train_size,test_size,correct,accuracy,k,threshold,mean_acceptance\n";
    for (const auto& r : report["runs"]) {
        out << r["seed"].get<std::uint64_t>() << ',' << r["algorithm"].get<std::string>() << ','
            << r["split_hash"].get<std::string>() << ',' << r["train_size"] << ',' << r["test_size"] << ','
            << r["correct"] << ',' << r["accuracy"].dump() << ',' << r["k"] << ',';
        if (r.contains("threshold")) out << csv_scalar(r["threshold"]);
        out << ',';
        if (r.contains("mean_acceptance")) out << r["mean_acceptance"].dump();
        out << '\n';
    }
    return out.str();
}

std::string render_text(const nlohmann::json& report) {
    std::ostringstream out;
    const std::string sub = report.value("subcommand", "");
    out << "qknn-lab " << sub << " (schema " << report.value("schema_version", 0) << ")\n";
    if (sub == "swap-test") {
        out << "P(ancilla=0)               " << fixed(report["p0"].get<double>(), 6) << '\n'
            << "fidelity |<x|y>|           " << fixed(report["fidelity"].get<double>(), 6) << '\n'
            << "quantum euclidean distance " << fixed(report["quantum_euclidean_distance"].get<double>(), 6) << '\n';
        if (report.contains("sampled")) {
            const auto& s = report["sampled"];
            out << "sampled p0 (" << s["shots"] << " shots)   " << fixed(s["p0_estimate"].get<double>(), 6)
                << (s["clamped"].get<bool>() ? "  [clamped]" : "") << '\n';
        }
        return out.str();
    }
    if (sub == "grover") {
        const auto& probs = report["probabilities"];
        const auto n = report["config"]["qubits"].get<unsigned>();
        out << "iterations " << report["iterations"] << ", marked " << report["config"]["marked"] << '\n';
        out << "outcome  probability\n";
        for (std::size_t i = 0; i < probs.size(); ++i) {
            std::string bits;
            for (unsigned q = n; q-- > 0;) bits.push_back(((i >> q) & 1U) ? '1' : '0');
            out << std::setw(7) << bits << "  " << fixed(probs[i].get<double>(), 6) << '\n';
        }
        out << "sampled " << report["sampled"] << '\n';
        return out.str();
    }
    out << "Algorithm  Mean     Std      Min      Max\n";
    for (const auto& [name, s] : report["summary"].items()) {
        std::string label = name;
        for (auto& c : label) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        out << std::left << std::setw(11) << label << fixed(s["mean"].get<double>()) << "   "
            << fixed(s["stddev"].get<double>()) << "   " << fixed(s["min"].get<double>()) << "   "
            << fixed(s["max"].get<double>()) << '\n';
    }
    out << "\nseed                  algorithm  split_hash        accuracy\n";
    for (const auto& r : report["runs"]) {
        out << std::left << std::setw(22) << r["seed"].get<std::uint64_t>() << std::setw(11)
            << r["algorithm"].get<std::string>() << std::setw(18) << r["split_hash"].get<std::string>()
            << fixed(r["accuracy"].get<double>()) << '\n';
    }
    if (report.contains("paired_differences")) {
        out << "\npaired differences (qknn - knn):";
        for (const auto& d : report["paired_differences"]) out << ' ' << fixed(d.get<double>());
        out << '\n';
    }
    if (report.contains("best_k")) out << "\nbest k " << report["best_k"] << '\n';
    return out.str();
}

std::uint64_t parse_u64(const std::string& text, const std::string& flag) {
    std::size_t used = 0;
    try {
        if (!text.empty() && text[0] != '-') {
            const auto v = std::stoull(text, &used);
            if (used == text.size()) return v;
        }
    } catch (const std::exception&) {
    }
    throw UsageError(flag + " expects an unsigned integer, got '" + text + "'");
}

unsigned parse_uint(const std::string& text, const std::string& flag) {
    const auto v = parse_u64(text, flag);
    if (v > 0xFFFFFFFFULL) throw UsageError(flag + " value too large");
    return static_cast<unsigned>(v);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c == '\n' || c == '\r' ? ' ' : c);
    }
    return out;
}

struct RawFlags {
    std::string seed;
    std::string k_range;
    std::string threshold;
    std::string shots;
    std::string backend = "sparse";
    std::string flag_mode = "offset-carry";
    std::string format = "json";
    std::string marked;
    std::string out;
    std::string sweep_out;
    bool no_fallback = false;
    bool no_timing = false;
};

void resolve(const RawFlags& raw, RunConfig& cfg, bool seed_given) {
    if (seed_given) {
        cfg.seed = parse_u64(raw.seed, "--seed");
    } else if (const char* env = std::getenv("QKNN_LAB_SEED"); env && *env) {
        cfg.seed = parse_u64(env, "QKNN_LAB_SEED");
    }
    if (!raw.k_range.empty()) {
        const auto dots = raw.k_range.find("..");
        if (dots == std::string::npos) throw UsageError("--k-range expects A..B");
        cfg.k_range = {parse_uint(raw.k_range.substr(0, dots), "--k-range"),
                       parse_uint(raw.k_range.substr(dots + 2), "--k-range")};
    }
    if (!raw.threshold.empty() && raw.threshold != "auto") cfg.threshold = parse_uint(raw.threshold, "--threshold");
    if (!raw.shots.empty() && raw.shots != "exact") cfg.shots = parse_u64(raw.shots, "--shots");
    if (raw.backend == "sparse") {
        cfg.backend = quantum::Backend::Sparse;
    } else if (raw.backend == "dense") {
        cfg.backend = quantum::Backend::Dense;
    } else {
        throw UsageError("--backend expects sparse|dense");
    }
    if (raw.flag_mode == "offset-carry") {
        cfg.flag_mode = quantum::FlagMode::OffsetCarry;
    } else if (raw.flag_mode == "or-highbits") {
        cfg.flag_mode = quantum::FlagMode::OrHighBits;
    } else {
        throw UsageError("--flag-mode expects offset-carry|or-highbits");
    }
    if (raw.format == "json") {
        cfg.format = OutputFormat::Json;
    } else if (raw.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else if (raw.format == "text") {
        cfg.format = OutputFormat::Text;
    } else {
        throw UsageError("--format expects json|csv|text");
    }
    if (!raw.marked.empty()) {
        const bool binary = raw.marked.size() > 1 && raw.marked.find_first_not_of("01") == std::string::npos &&
                            raw.marked.size() == cfg.grover_qubits;
        if (binary) {
            // most significant qubit first, as printed in the outcome table
            cfg.marked = std::stoull(raw.marked, nullptr, 2);
        } else {
            cfg.marked = parse_u64(raw.marked, "--marked");
        }
    }
    if (!raw.out.empty()) cfg.out = raw.out;
    if (!raw.sweep_out.empty()) cfg.sweep_out = raw.sweep_out;
    cfg.fallback = !raw.no_fallback;
    cfg.include_timing = !raw.no_timing;
}

}  // namespace

std::string render_report(const nlohmann::json& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return report.dump(2) + "\n";
        case OutputFormat::Csv: return render_csv(report);
        case OutputFormat::Text: return render_text(report);
    }
    return report.dump(2) + "\n";
}

std::string render_sweep_csv(const nlohmann::json& report) {
    std::ostringstream out;
    for (const char* key : {"k_sweep", "t_sweep"}) {
        if (!report.contains(key)) continue;
        const std::string param = key[0] == 'k' ? "k" : "t";
        const auto& sweep = report[key];
        const auto seeds = report["config"]["reps"].get<unsigned>();
        const auto first_seed = report["config"]["seed"].get<std::uint64_t>();
        out << "sweep," << param << ",mean_accuracy";
        for (unsigned r = 0; r < seeds; ++r) out << ",seed_" << first_seed + r;
        out << '\n';
        for (const auto& p : sweep) {
            out << param << ',' << p[param] << ',' << p["mean_accuracy"].dump();
            for (const auto& a : p["per_seed"]) out << ',' << a.dump();
            out << '\n';
        }
    }
    return out.str();
}

void emit_report(const nlohmann::json& report, OutputFormat format, const std::optional<std::filesystem::path>& path,
                 std::ostream& fallback) {
    const std::string text = render_report(report, format);
    if (!path) {
        fallback << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path->string());
    file << text;
    if (!file) throw std::runtime_error("write failed for " + path->string());
}

std::string format_error_line(const std::string& kind, int exit_code, const std::string& message) {
    return "error: code=" + kind + " exit=" + std::to_string(exit_code) + " message=\"" + escape(message) + "\"";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qknn-lab: quantum and classical k-nearest-neighbor benchmark harness", "qknn-lab"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    cfg.data_path = QKNN_LAB_DEFAULT_DATA;
    RawFlags raw;
    std::string data_path = cfg.data_path.string();

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", raw.format, "json|csv|text")->capture_default_str();
        sub->add_option("--out", raw.out, "write the report to PATH instead of stdout");
        sub->add_option("--seed", raw.seed, "64-bit seed (fallback: QKNN_LAB_SEED, then 42)");
        sub->add_flag("--no-timing", raw.no_timing, "omit timing fields from the report");
    };
    auto add_experiment = [&](CLI::App* sub) {
        add_output(sub);
        sub->add_option("--data", data_path, "WDBC-layout CSV file")->capture_default_str();
        sub->add_option("--split", cfg.split, "train fraction")->capture_default_str();
        sub->add_option("--k", cfg.k, "neighbors for KNN")->capture_default_str();
        sub->add_option("--reps", cfg.reps, "number of seeds (seed, seed+1, ...)");
    };
    auto add_quantum = [&](CLI::App* sub) {
        sub->add_option("--threshold", raw.threshold, "Hamming threshold t or 'auto'");
        sub->add_option("--k-for-auto", cfg.k_for_auto, "k used to calibrate t in auto mode (default: --k)");
        sub->add_option("--shots", raw.shots, "shot count or 'exact'");
        sub->add_option("--backend", raw.backend, "sparse|dense")->capture_default_str();
        sub->add_option("--flag-mode", raw.flag_mode, "offset-carry|or-highbits")->capture_default_str();
        sub->add_flag("--no-fallback", raw.no_fallback, "fail instead of widening t on empty post-selection");
    };

    auto* swap_cmd = app.add_subcommand("swap-test", "controlled-SWAP fidelity test of two states");
    add_output(swap_cmd);
    swap_cmd->add_option("--x", cfg.state_x, "state spec: 0, 1, +, -, bit/sign strings, or amplitudes")
        ->capture_default_str();
    swap_cmd->add_option("--y", cfg.state_y, "state spec")->capture_default_str();
    swap_cmd->add_option("--shots", raw.shots, "shot count or 'exact'");

    auto* grover_cmd = app.add_subcommand("grover", "Grover search for one marked basis state");
    add_output(grover_cmd);
    grover_cmd->add_option("--qubits,-n", cfg.grover_qubits, "qubit count")->capture_default_str();
    grover_cmd->add_option("--marked", raw.marked, "marked state as an integer or an n-bit string");
    grover_cmd->add_option("--iterations", cfg.iterations, "Grover iterations (default: optimal)");

    auto* knn_cmd = app.add_subcommand("knn", "classical KNN on the WDBC data");
    add_experiment(knn_cmd);
    knn_cmd->add_option("--k-range", raw.k_range, "sweep k over A..B");
    knn_cmd->add_option("--sweep-out", raw.sweep_out, "write sweep tables as CSV");

    auto* qknn_cmd = app.add_subcommand("qknn", "quantum Hamming-distance KNN on the WDBC data");
    add_experiment(qknn_cmd);
    add_quantum(qknn_cmd);
    qknn_cmd->add_flag("--t-sweep", cfg.t_sweep, "also evaluate every fixed threshold t");
    qknn_cmd->add_option("--sweep-out", raw.sweep_out, "write sweep tables as CSV");

    auto* compare_cmd = app.add_subcommand("compare", "KNN vs QKNN on identical splits");
    add_experiment(compare_cmd);
    add_quantum(compare_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << format_error_line("usage", kExitUsage, e.what()) << '\n';
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    cfg.data_path = data_path;
    try {
        resolve(raw, cfg, sub->count("--seed") > 0);
        cfg.validate();
        nlohmann::json report;
        if (cfg.subcommand == "swap-test") {
            report = cmd_swap_test(cfg);
        } else if (cfg.subcommand == "grover") {
            report = cmd_grover(cfg);
        } else if (cfg.subcommand == "knn") {
            report = cmd_knn(cfg).to_json();
        } else if (cfg.subcommand == "qknn") {
            report = cmd_qknn(cfg).to_json();
        } else {
            report = cmd_compare(cfg).to_json();
        }
        emit_report(report, cfg.format, cfg.out, out);
        if (cfg.sweep_out) {
            std::ofstream sweep(*cfg.sweep_out);
            if (!sweep) throw std::runtime_error("cannot write " + cfg.sweep_out->string());
            sweep << render_sweep_csv(report);
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << format_error_line("usage", kExitUsage, e.what()) << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << format_error_line("usage", kExitUsage, e.what()) << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << format_error_line("data", kExitData, e.what()) << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << format_error_line("internal", kExitInternal, e.what()) << '\n';
        return kExitInternal;
    }
}

}  // namespace qknn::bench
