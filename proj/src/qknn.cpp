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

#include "qknn/qknn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <type_traits>

#include "qknn/errors.hpp"
#include "qknn/sim/ops.hpp"

namespace qknn::quantum {
namespace {

unsigned ceil_log2(unsigned value) {
    unsigned bits = 0;
    while ((1ULL << bits) < value) ++bits;
    return bits;
}

// X with the smallest gate kind that carries the given number of controls.
sim::Gate controlled_x(std::vector<Qubit> controls, Qubit target) {
    switch (controls.size()) {
        case 0: return sim::Gate::x(target);
        case 1: return sim::Gate::cnot(controls[0], target);
        case 2: return sim::Gate::ccx(controls[0], controls[1], target);
        default: return sim::Gate::mcx(std::move(controls), target);
    }
}

void check_threshold(unsigned num_features, unsigned threshold) {
    if (threshold < 1 || threshold > num_features + 1) {
        throw DomainError("threshold t=" + std::to_string(threshold) + " outside [1, " +
                          std::to_string(num_features + 1) + "]");
    }
}

void check_mode(FlagMode mode, unsigned num_features, unsigned threshold) {
    check_threshold(num_features, threshold);
    if (!flag_mode_supports(mode, num_features, threshold)) {
        throw DomainError("or-highbits flag mode needs a power-of-two threshold, got t=" +
                          std::to_string(threshold));
    }
}

template <class F>
decltype(auto) with_backend(Backend backend, F&& f) {
    if (backend == Backend::Dense) return f(std::type_identity<sim::DenseState>{});
    return f(std::type_identity<sim::SparseState>{});
}

template <sim::StateBackend S>
S run_pipeline(const TrainingSet& ts, const BitVector& test, const QknnLayout& layout, unsigned threshold,
               FlagMode mode) {
    S state = encode_training_superposition<S>(ts, layout);
    state.apply(build_qknn_circuit(test, layout, threshold, mode));
    return state;
}

// P(flag = 1, cls = c) for every class, read exactly from amplitudes.
template <sim::StateBackend S>
std::vector<double> joint_flag_class(const S& state, const QknnLayout& layout, unsigned num_classes) {
    std::vector<double> joint(num_classes, 0.0);
    state.for_each_amplitude([&](BasisIndex basis, sim::Amplitude amp) {
        if (!((basis >> layout.flag) & 1U)) return;
        unsigned label = 0;
        for (std::size_t j = 0; j < layout.cls.size(); ++j) {
            label |= static_cast<unsigned>((basis >> layout.cls[j]) & 1U) << j;
        }
        if (label >= num_classes) throw InternalError("class register holds an unknown label");
        joint[label] += std::norm(amp);
    });
    return joint;
}

unsigned argmax_lowest_label(const std::vector<double>& dist) {
    constexpr double kTieTolerance = 1e-12;
    unsigned best = 0;
    for (unsigned c = 1; c < dist.size(); ++c) {
        if (dist[c] > dist[best] + kTieTolerance) best = c;
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Types

void TrainingSet::validate() const {
    if (items.empty()) throw DomainError("training set is empty");
    if (num_features < 1) throw DomainError("training set needs at least one feature");
    if (num_classes < 1) throw DomainError("training set needs at least one class");
    for (const auto& item : items) {
        if (item.vector.size() != num_features) {
            throw DomainError("training vector length " + std::to_string(item.vector.size()) +
                              " != feature count " + std::to_string(num_features));
        }
        if (item.label >= num_classes) {
            throw DomainError("label " + std::to_string(item.label) + " outside [0, " +
                              std::to_string(num_classes) + ")");
        }
    }
}

unsigned accumulator_low_bits(unsigned num_features) { return ceil_log2(num_features + 1); }

unsigned class_register_width(unsigned num_classes) { return ceil_log2(num_classes); }

QknnLayout QknnLayout::for_problem(unsigned num_features, unsigned num_classes) {
    if (num_features < 1) throw DomainError("layout needs at least one feature");
    if (num_classes < 1) throw DomainError("layout needs at least one class");
    QknnLayout layout;
    Qubit next = 0;
    for (unsigned i = 0; i < num_features; ++i) layout.diff.push_back(next++);
    for (unsigned i = 0; i < class_register_width(num_classes); ++i) layout.cls.push_back(next++);
    for (unsigned i = 0; i <= quantum::accumulator_low_bits(num_features); ++i) layout.acc.push_back(next++);
    layout.flag = next++;
    if (next > sim::SparseState::kMaxQubits) throw ResourceError("problem needs more than 63 qubits");
    return layout;
}

unsigned QknnLayout::num_qubits() const {
    Qubit top = flag;
    for (const auto* reg : {&diff, &cls, &acc}) {
        for (Qubit q : *reg) top = std::max(top, q);
    }
    return top + 1;
}

void QknnLayout::validate() const {
    if (diff.empty()) throw DomainError("layout has no difference register");
    if (acc.size() != quantum::accumulator_low_bits(num_features()) + 1) {
        throw DomainError("accumulator width must be ceil(log2(n+1)) + 1");
    }
    std::vector<Qubit> all{flag};
    for (const auto* reg : {&diff, &cls, &acc}) all.insert(all.end(), reg->begin(), reg->end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw DomainError("layout registers overlap");
}

std::string_view to_string(FlagMode mode) {
    return mode == FlagMode::OffsetCarry ? "offset-carry" : "or-highbits";
}

std::string_view to_string(Backend backend) { return backend == Backend::Sparse ? "sparse" : "dense"; }

void QknnConfig::validate(unsigned num_features) const {
    check_mode(flag_mode, num_features, threshold);
    if (shots && *shots == 0) throw DomainError("shots must be >= 1");
}

BasisIndex threshold_offset(unsigned num_features, unsigned threshold, FlagMode mode) {
    check_mode(mode, num_features, threshold);
    if (mode == FlagMode::OrHighBits) return 0;
    const BasisIndex top = BasisIndex{1} << accumulator_low_bits(num_features);
    return top - (num_features - threshold + 1);
}

bool flag_mode_supports(FlagMode mode, unsigned num_features, unsigned threshold) {
    if (threshold < 1 || threshold > num_features + 1) return false;
    if (mode == FlagMode::OffsetCarry) return true;
    return std::has_single_bit(threshold);
}

// ---------------------------------------------------------------------------
// Encoding

template <sim::StateBackend S>
S encode_training_superposition(const TrainingSet& ts, const QknnLayout& layout, BasisIndex acc_init) {
    ts.validate();
    layout.validate();
    if (layout.num_features() != ts.num_features) throw DomainError("layout does not match the feature count");
    if (layout.cls.size() < class_register_width(ts.num_classes)) {
        throw DomainError("class register too narrow");
    }
    if (acc_init >> layout.acc.size() != 0) throw DomainError("accumulator start value does not fit");

    BasisIndex acc_bits = 0;
    for (std::size_t j = 0; j < layout.acc.size(); ++j) acc_bits |= ((acc_init >> j) & 1U) << layout.acc[j];

    std::map<BasisIndex, std::size_t> multiplicity;
    for (const auto& item : ts.items) {
        BasisIndex basis = acc_bits;
        for (std::size_t i = 0; i < layout.diff.size(); ++i) {
            basis |= static_cast<BasisIndex>(item.vector[i]) << layout.diff[i];
        }
        for (std::size_t j = 0; j < layout.cls.size(); ++j) {
            basis |= static_cast<BasisIndex>((item.label >> j) & 1U) << layout.cls[j];
        }
        ++multiplicity[basis];
    }

    const double total = static_cast<double>(ts.size());
    std::vector<sim::SparseState::Entry> entries;
    entries.reserve(multiplicity.size());
    for (const auto& [basis, m] : multiplicity) {
        entries.emplace_back(basis, sim::Amplitude{std::sqrt(static_cast<double>(m) / total), 0.0});
    }
    if constexpr (std::is_same_v<S, sim::DenseState>) {
        return sim::DenseState::from_entries(layout.num_qubits(), entries);
    } else {
        return sim::SparseState::from_entries(layout.num_qubits(), std::move(entries));
    }
}

// ---------------------------------------------------------------------------
// Circuit builders

sim::Circuit build_offset_loader(const QknnLayout& layout, BasisIndex value) {
    if (value >> layout.acc.size() != 0) throw DomainError("offset does not fit the accumulator");
    sim::Circuit circuit(layout.num_qubits());
    for (std::size_t j = 0; j < layout.acc.size(); ++j) {
        if ((value >> j) & 1U) circuit.add(sim::Gate::x(layout.acc[j]));
    }
    return circuit;
}

sim::Circuit build_difference(const BitVector& test, const QknnLayout& layout) {
    if (test.size() != layout.diff.size()) {
        throw DomainError("test vector length " + std::to_string(test.size()) + " != feature count " +
                          std::to_string(layout.diff.size()));
    }
    sim::Circuit circuit(layout.num_qubits());
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (test[i]) circuit.add(sim::Gate::x(layout.diff[i]));
    }
    for (Qubit q : layout.diff) circuit.add(sim::Gate::x(q));
    return circuit;
}

sim::Circuit build_incrementer(unsigned width) {
    if (width < 1) throw DomainError("incrementer width must be >= 1");
    std::vector<Qubit> acc(width);
    for (unsigned i = 0; i < width; ++i) acc[i] = i;
    return build_incrementer(width, acc);
}

sim::Circuit build_incrementer(unsigned num_qubits, std::span<const Qubit> acc, std::span<const Qubit> extra_controls) {
    if (acc.empty()) throw DomainError("incrementer width must be >= 1");
    sim::Circuit circuit(num_qubits);
    // Bit j flips iff every lower bit is 1; going from the top down leaves the
    // lower bits untouched until they are used as controls.
    for (std::size_t j = acc.size(); j-- > 0;) {
        std::vector<Qubit> controls(extra_controls.begin(), extra_controls.end());
        controls.insert(controls.end(), acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(j));
        circuit.add(controlled_x(std::move(controls), acc[j]));
    }
    return circuit;
}

sim::Circuit build_accumulator(const QknnLayout& layout, unsigned threshold, FlagMode mode) {
    check_mode(mode, layout.num_features(), threshold);
    const unsigned n = layout.num_qubits();
    sim::Circuit circuit(n);
    const bool count_disagreements = mode == FlagMode::OrHighBits;
    if (count_disagreements) {
        for (Qubit q : layout.diff) circuit.add(sim::Gate::x(q));
    }
    for (Qubit q : layout.diff) {
        const Qubit control[] = {q};
        circuit.append(build_incrementer(n, layout.acc, control));
    }
    if (count_disagreements) {
        for (Qubit q : layout.diff) circuit.add(sim::Gate::x(q));
    }
    return circuit;
}

sim::Circuit build_or_gate(unsigned num_qubits, std::span<const Qubit> inputs, Qubit target) {
    if (inputs.empty()) throw DomainError("or gate needs at least one input");
    sim::Circuit circuit(num_qubits);
    for (Qubit q : inputs) circuit.add(sim::Gate::x(q));
    circuit.add(controlled_x({inputs.begin(), inputs.end()}, target));
    circuit.add(sim::Gate::x(target));
    for (Qubit q : inputs) circuit.add(sim::Gate::x(q));
    return circuit;
}

sim::Circuit build_flag(const QknnLayout& layout, unsigned threshold, FlagMode mode) {
    check_mode(mode, layout.num_features(), threshold);
    const unsigned n = layout.num_qubits();
    if (mode == FlagMode::OffsetCarry) {
        sim::Circuit circuit(n);
        circuit.add(sim::Gate::cnot(layout.acc.back(), layout.flag));
        return circuit;
    }
    // acc = d; d < 2^m exactly when every bit at position >= m is clear.
    const auto m = static_cast<std::size_t>(std::countr_zero(threshold));
    const std::span<const Qubit> high(layout.acc.begin() + static_cast<std::ptrdiff_t>(m), layout.acc.end());
    sim::Circuit circuit = build_or_gate(n, high, layout.flag);
    circuit.add(sim::Gate::x(layout.flag));
    return circuit;
}

sim::Circuit build_qknn_circuit(const BitVector& test, const QknnLayout& layout, unsigned threshold, FlagMode mode) {
    sim::Circuit circuit = build_offset_loader(layout, threshold_offset(layout.num_features(), threshold, mode));
    circuit.append(build_difference(test, layout));
    circuit.append(build_accumulator(layout, threshold, mode));
    circuit.append(build_flag(layout, threshold, mode));
    return circuit;
}

// ---------------------------------------------------------------------------
// In-place operations

template <sim::StateBackend S>
void apply_difference(S& state, const BitVector& test, const QknnLayout& layout) {
    state.apply(build_difference(test, layout));
}

template <sim::StateBackend S>
void apply_accumulator(S& state, const QknnLayout& layout, unsigned threshold, FlagMode mode) {
    state.apply(build_accumulator(layout, threshold, mode));
}

template <sim::StateBackend S>
void or_gate(S& state, std::span<const Qubit> inputs, Qubit target) {
    state.apply(build_or_gate(state.num_qubits(), inputs, target));
}

template <sim::StateBackend S>
void apply_flag(S& state, const QknnLayout& layout, unsigned threshold, FlagMode mode) {
    state.apply(build_flag(layout, threshold, mode));
}

#define QKNN_INSTANTIATE(S)                                                                                   \
    template S encode_training_superposition<S>(const TrainingSet&, const QknnLayout&, BasisIndex);          \
    template void apply_difference<S>(S&, const BitVector&, const QknnLayout&);                             \
    template void apply_accumulator<S>(S&, const QknnLayout&, unsigned, FlagMode);                          \
    template void or_gate<S>(S&, std::span<const Qubit>, Qubit);                                            \
    template void apply_flag<S>(S&, const QknnLayout&, unsigned, FlagMode);

QKNN_INSTANTIATE(sim::SparseState)
QKNN_INSTANTIATE(sim::DenseState)
#undef QKNN_INSTANTIATE

// ---------------------------------------------------------------------------
// Classification

ClassificationResult classify(const TrainingSet& ts, const BitVector& test, const QknnConfig& cfg) {
    ts.validate();
    if (test.size() != ts.num_features) throw DomainError("test vector length does not match the training set");
    cfg.validate(ts.num_features);
    const QknnLayout layout = QknnLayout::for_problem(ts.num_features, ts.num_classes);

    std::vector<Qubit> readout{layout.flag};
    readout.insert(readout.end(), layout.cls.begin(), layout.cls.end());

    for (unsigned t = cfg.threshold;; ++t) {
        if (!flag_mode_supports(cfg.flag_mode, ts.num_features, t)) {
            if (t > ts.num_features) break;
            continue;
        }
        ClassificationResult result;
        result.effective_threshold = t;
        result.class_distribution.assign(ts.num_classes, 0.0);

        with_backend(cfg.backend, [&]<class S>(std::type_identity<S>) {
            const S state = run_pipeline<S>(ts, test, layout, t, cfg.flag_mode);
            if (!cfg.shots) {
                const auto joint = joint_flag_class(state, layout, ts.num_classes);
                for (double p : joint) result.acceptance_probability += p;
                if (result.acceptance_probability > 1e-12) {
                    for (unsigned c = 0; c < ts.num_classes; ++c) {
                        result.class_distribution[c] = joint[c] / result.acceptance_probability;
                    }
                }
                return;
            }
            Rng rng(derive_seed(cfg.seed, t));
            const auto counts = sim::sample_counts(state, readout, *cfg.shots, rng);
            for (const auto& [outcome, count] : counts) {
                if (!(outcome & 1U)) continue;
                const auto label = static_cast<unsigned>(outcome >> 1);
                if (label >= ts.num_classes) throw InternalError("class register holds an unknown label");
                result.class_distribution[label] += static_cast<double>(count);
                result.accepted_shots += count;
            }
            result.acceptance_probability =
                static_cast<double>(result.accepted_shots) / static_cast<double>(*cfg.shots);
            if (result.accepted_shots > 0) {
                for (auto& v : result.class_distribution) v /= static_cast<double>(result.accepted_shots);
            }
        });

        if (result.acceptance_probability > 1e-12) {
            result.predicted = argmax_lowest_label(result.class_distribution);
            return result;
        }
        if (!cfg.fallback || t > ts.num_features) break;
    }
    throw NoNeighborError("no training vector within the threshold (post-selection accepted nothing)");
}

double acceptance_probability(const TrainingSet& ts, const BitVector& test, unsigned threshold, Backend backend) {
    ts.validate();
    const QknnLayout layout = QknnLayout::for_problem(ts.num_features, ts.num_classes);
    return with_backend(backend, [&]<class S>(std::type_identity<S>) {
        const S state = run_pipeline<S>(ts, test, layout, threshold, FlagMode::OffsetCarry);
        return sim::probability_of(state, layout.flag, 1);
    });
}

unsigned calibrate_threshold(const TrainingSet& ts, const BitVector& test, unsigned k, Backend backend) {
    ts.validate();
    if (k < 1 || k > ts.size()) {
        throw DomainError("k=" + std::to_string(k) + " outside [1, " + std::to_string(ts.size()) + "]");
    }
    const double target = static_cast<double>(k) / static_cast<double>(ts.size()) - 1e-12;
    // acceptance is non-decreasing in t and reaches 1 at t = n + 1
    unsigned lo = 1;
    unsigned hi = ts.num_features + 1;
    while (lo < hi) {
        const unsigned mid = lo + (hi - lo) / 2;
        if (acceptance_probability(ts, test, mid, backend) >= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace qknn::quantum
