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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qknn/errors.hpp"
#include "qknn/random.hpp"
#include "qknn/sim/state.hpp"

namespace qknn::sim {

struct MeasurementRecord {
    Qubit qubit = 0;
    int bit = 0;
    double probability = 0.0;  // pre-measurement probability of `bit`
};

/// Outcome integer: bit j holds the measured value of qubits[j].
using Counts = std::map<std::uint64_t, std::uint64_t>;

inline constexpr unsigned kMaxUnitaryQubits = 10;

template <StateBackend S = SparseState>
S new_basis_state(unsigned num_qubits, BasisIndex basis) {
    return S::basis(num_qubits, basis);
}

template <StateBackend S>
S apply_gate(S state, const Gate& gate) {
    state.apply(gate);
    return state;
}

template <StateBackend S>
S apply_circuit(S state, const Circuit& circuit) {
    state.apply(circuit);
    return state;
}

inline void check_qubit(unsigned num_qubits, Qubit qubit) {
    if (qubit >= num_qubits) {
        throw DomainError("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
}

template <StateBackend S>
double probability_of(const S& state, Qubit qubit, int bit) {
    check_qubit(state.num_qubits(), qubit);
    if (bit != 0 && bit != 1) throw DomainError("bit must be 0 or 1");
    double total = 0.0;
    const BasisIndex want = static_cast<BasisIndex>(bit) << qubit;
    state.for_each_amplitude([&](BasisIndex basis, Amplitude amp) {
        if ((basis & (BasisIndex{1} << qubit)) == want) total += std::norm(amp);
    });
    return std::clamp(total, 0.0, 1.0);
}

template <StateBackend S>
std::pair<MeasurementRecord, S> measure_qubit(const S& state, Qubit qubit, Rng& rng) {
    const double p1 = probability_of(state, qubit, 1);
    const int bit = uniform01(rng) < p1 ? 1 : 0;
    const double probability = bit == 1 ? p1 : 1.0 - p1;
    if (probability < 1e-9) throw InternalError("measured a branch with vanishing norm");
    S post = state;
    post.collapse(qubit, bit, probability);
    return {MeasurementRecord{qubit, bit, probability}, std::move(post)};
}

/// Exact joint distribution of the listed qubits. Keys follow the Counts convention.
template <StateBackend S>
std::map<std::uint64_t, double> marginal_distribution(const S& state, std::span<const Qubit> qubits) {
    for (Qubit q : qubits) check_qubit(state.num_qubits(), q);
    std::map<std::uint64_t, double> dist;
    state.for_each_amplitude([&](BasisIndex basis, Amplitude amp) {
        std::uint64_t outcome = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) outcome |= ((basis >> qubits[j]) & 1ULL) << j;
        dist[outcome] += std::norm(amp);
    });
    return dist;
}

/// Draws `shots` independent outcomes from a discrete distribution (inverse CDF).
Counts sample_distribution(const std::map<std::uint64_t, double>& dist, std::uint64_t shots, Rng& rng);

/// Repeated non-collapsing sampling of the listed qubits.
template <StateBackend S>
Counts sample_counts(const S& state, std::span<const Qubit> qubits, std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw DomainError("shots must be >= 1");
    return sample_distribution(marginal_distribution(state, qubits), shots, rng);
}

/// <a|b>, conjugate-linear in a.
Amplitude inner_product(const SparseState& a, const SparseState& b);
Amplitude inner_product(const DenseState& a, const DenseState& b);

/// |low> (x) |high>: `low` occupies qubits [0, low.n), `high` the qubits above.
SparseState tensor(const SparseState& low, const SparseState& high);

/// Column j holds the circuit applied to |j>. Throws ResourceError above kMaxUnitaryQubits.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

}  // namespace qknn::sim
