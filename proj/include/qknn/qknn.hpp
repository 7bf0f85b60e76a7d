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

// Hamming-distance quantum KNN.
//
// The training set is loaded as an equal-weight superposition over
// |diff = v^p, cls = c^p, acc = 0, flag = 0>. For a classical test vector x
// the circuit then
//
//   1. loads a threshold offset A0 into the accumulator (X gates),
//   2. turns each diff qubit into an agreement bit NOT(v_i XOR x_i),
//   3. adds every agreement bit into the accumulator with a controlled
//      incrementer, leaving acc = A0 + s where s = n - d,
//   4. sets the flag qubit when d < t.
//
// With l = ceil(log2(n+1)), a (l+1)-bit accumulator and A0 = 2^l - (n-t+1),
// the top accumulator bit is set exactly when s >= n - t + 1, i.e. d < t,
// and the sum never wraps because A0 + s <= 2^l + n < 2^(l+1).
//
// Classification post-selects on flag = 1 and reads the class register.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qknn/bits.hpp"
#include "qknn/random.hpp"
#include "qknn/sim/gate.hpp"
#include "qknn/sim/state.hpp"

namespace qknn::quantum {

using sim::BasisIndex;
using sim::Qubit;

struct LabeledBitVector {
    BitVector vector;
    unsigned label = 0;
};

struct TrainingSet {
    std::vector<LabeledBitVector> items;
    unsigned num_features = 0;
    unsigned num_classes = 2;

    /// Non-empty, all vectors of length num_features, all labels < num_classes.
    void validate() const;
    [[nodiscard]] std::size_t size() const { return items.size(); }
};

/// Qubit register map. Registers are disjoint.
struct QknnLayout {
    std::vector<Qubit> diff;  // one per feature
    std::vector<Qubit> cls;   // ceil(log2 C) qubits, least significant first
    std::vector<Qubit> acc;   // l + 1 qubits, least significant first
    Qubit flag = 0;

    /// diff, cls, acc, flag packed from qubit 0 upwards.
    static QknnLayout for_problem(unsigned num_features, unsigned num_classes);

    [[nodiscard]] unsigned num_features() const { return static_cast<unsigned>(diff.size()); }
    [[nodiscard]] unsigned accumulator_low_bits() const { return static_cast<unsigned>(acc.size()) - 1; }
    [[nodiscard]] unsigned num_qubits() const;
    void validate() const;
};

/// ceil(log2(n + 1)).
unsigned accumulator_low_bits(unsigned num_features);
/// ceil(log2(C)); 0 for a single class.
unsigned class_register_width(unsigned num_classes);

enum class FlagMode {
    // Accumulator starts at A0 and counts agreements; flag = CNOT from the top bit.
    OffsetCarry,
    // Accumulator starts at 0 and counts disagreements; flag = NOT OR(acc bits >= m)
    // for t = 2^m. Only defined for power-of-two thresholds.
    OrHighBits,
};

enum class Backend { Sparse, Dense };

std::string_view to_string(FlagMode mode);
std::string_view to_string(Backend backend);

struct QknnConfig {
    unsigned threshold = 1;
    std::optional<std::uint64_t> shots;  // nullopt: exact probabilities
    Backend backend = Backend::Sparse;
    FlagMode flag_mode = FlagMode::OffsetCarry;
    bool fallback = true;    // widen t on empty post-selection
    std::uint64_t seed = 0;  // shot sampling only

    void validate(unsigned num_features) const;
};

/// Accumulator start value for `mode`: 2^l - (n - t + 1) for OffsetCarry, 0 for OrHighBits.
BasisIndex threshold_offset(unsigned num_features, unsigned threshold, FlagMode mode = FlagMode::OffsetCarry);

/// True when `mode` can realize threshold t for n features.
bool flag_mode_supports(FlagMode mode, unsigned num_features, unsigned threshold);

/// Equal-weight superposition of the training items. Repeated (vector, label)
/// pairs merge into one basis state with amplitude sqrt(m/N). The accumulator
/// holds `acc_init` and the flag holds 0.
template <sim::StateBackend S>
S encode_training_superposition(const TrainingSet& ts, const QknnLayout& layout, BasisIndex acc_init = 0);

/// X gates loading `value` into the accumulator.
sim::Circuit build_offset_loader(const QknnLayout& layout, BasisIndex value);

/// X on diff[i] where test[i] = 1, then X on every diff qubit.
sim::Circuit build_difference(const BitVector& test, const QknnLayout& layout);

/// |a> -> |a + 1 mod 2^w> on qubits [0, w).
sim::Circuit build_incrementer(unsigned width);

/// Incrementer on `acc` (least significant first), every gate additionally
/// controlled by `extra_controls`.
sim::Circuit build_incrementer(unsigned num_qubits, std::span<const Qubit> acc,
                               std::span<const Qubit> extra_controls = {});

/// Controlled incrementers adding each diff bit (OffsetCarry) or its complement
/// (OrHighBits) into the accumulator.
sim::Circuit build_accumulator(const QknnLayout& layout, unsigned threshold, FlagMode mode = FlagMode::OffsetCarry);

/// target ^= OR(inputs) via De Morgan: X inputs, MCX, X target, X inputs.
sim::Circuit build_or_gate(unsigned num_qubits, std::span<const Qubit> inputs, Qubit target);

sim::Circuit build_flag(const QknnLayout& layout, unsigned threshold, FlagMode mode = FlagMode::OffsetCarry);

/// Offset loader, difference, accumulator and flag in one circuit.
sim::Circuit build_qknn_circuit(const BitVector& test, const QknnLayout& layout, unsigned threshold,
                                FlagMode mode = FlagMode::OffsetCarry);

template <sim::StateBackend S>
void apply_difference(S& state, const BitVector& test, const QknnLayout& layout);

/// The accumulator must already hold threshold_offset(n, t, mode).
template <sim::StateBackend S>
void apply_accumulator(S& state, const QknnLayout& layout, unsigned threshold,
                       FlagMode mode = FlagMode::OffsetCarry);

template <sim::StateBackend S>
void or_gate(S& state, std::span<const Qubit> inputs, Qubit target);

template <sim::StateBackend S>
void apply_flag(S& state, const QknnLayout& layout, unsigned threshold, FlagMode mode = FlagMode::OffsetCarry);

struct ClassificationResult {
    unsigned predicted = 0;
    std::vector<double> class_distribution;  // P(class | flag = 1)
    double acceptance_probability = 0.0;     // P(flag = 1)
    unsigned effective_threshold = 0;
    std::uint64_t accepted_shots = 0;  // shots mode only
};

/// Full pipeline for one test vector. Ties go to the lowest label.
ClassificationResult classify(const TrainingSet& ts, const BitVector& test, const QknnConfig& cfg);

/// Exact P(flag = 1) for threshold t.
double acceptance_probability(const TrainingSet& ts, const BitVector& test, unsigned threshold,
                              Backend backend = Backend::Sparse);

/// Smallest t in [1, n + 1] whose acceptance probability is >= k / N.
unsigned calibrate_threshold(const TrainingSet& ts, const BitVector& test, unsigned k,
                             Backend backend = Backend::Sparse);

}  // namespace qknn::quantum
