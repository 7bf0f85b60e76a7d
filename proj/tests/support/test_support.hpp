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

// Generators and brute-force oracles shared by the unit and acceptance tests.
// The oracles work on plain integers and vectors; nothing here calls into the
// circuit code they are used to check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qknn/qknn.hpp"
#include "qknn/random.hpp"
#include "qknn/sim/gate.hpp"
#include "qknn/sim/state.hpp"

namespace qknn::testing {

inline std::vector<sim::Amplitude> random_amplitudes(unsigned num_qubits, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<sim::Amplitude> amps(std::size_t{1} << num_qubits);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {normal(rng), normal(rng)};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return amps;
}

inline sim::SparseState random_sparse_state(unsigned num_qubits, Rng& rng) {
    return sim::SparseState::from_dense(random_amplitudes(num_qubits, rng));
}

/// Random gate from the full set over `num_qubits` qubits (needs >= 3 qubits for every kind).
inline sim::Gate random_gate(unsigned num_qubits, Rng& rng) {
    std::vector<sim::Qubit> qubits(num_qubits);
    std::iota(qubits.begin(), qubits.end(), 0U);
    for (std::size_t i = qubits.size(); i > 1; --i) std::swap(qubits[i - 1], qubits[uniform_below(rng, i)]);
    const unsigned max_kind = num_qubits >= 3 ? 8 : (num_qubits == 2 ? 5 : 3);
    switch (uniform_below(rng, max_kind)) {
        case 0: return sim::Gate::h(qubits[0]);
        case 1: return sim::Gate::x(qubits[0]);
        case 2: return sim::Gate::id(qubits[0]);
        case 3: return sim::Gate::cnot(qubits[0], qubits[1]);
        case 4: return sim::Gate::swap(qubits[0], qubits[1]);
        case 5: return sim::Gate::ccx(qubits[0], qubits[1], qubits[2]);
        case 6: return sim::Gate::cswap(qubits[0], qubits[1], qubits[2]);
        default: {
            const auto n_controls = uniform_below(rng, num_qubits);  // 0 .. n-1
            std::vector<sim::Qubit> controls(qubits.begin() + 1,
                                             qubits.begin() + 1 + static_cast<std::ptrdiff_t>(n_controls));
            return sim::Gate::mcx(std::move(controls), qubits[0]);
        }
    }
}

inline sim::Circuit random_circuit(unsigned num_qubits, unsigned num_gates, Rng& rng) {
    sim::Circuit c(num_qubits);
    for (unsigned i = 0; i < num_gates; ++i) c.add(random_gate(num_qubits, rng));
    return c;
}

inline unsigned popcount_xor(const BitVector& a, const BitVector& b) {
    unsigned d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] ^ b[i]) & 1U;
    return d;
}

struct BruteForceResult {
    std::vector<double> class_distribution;  // |{p in class c, d < t}| / |{p : d < t}|
    double acceptance = 0.0;                 // |{p : d < t}| / N
};

inline BruteForceResult brute_force_qknn(const quantum::TrainingSet& ts, const BitVector& test, unsigned threshold) {
    BruteForceResult out;
    out.class_distribution.assign(ts.num_classes, 0.0);
    std::size_t inside = 0;
    for (const auto& item : ts.items) {
        if (popcount_xor(item.vector, test) < threshold) {
            ++inside;
            out.class_distribution[item.label] += 1.0;
        }
    }
    if (inside > 0) {
        for (auto& v : out.class_distribution) v /= static_cast<double>(inside);
    }
    out.acceptance = static_cast<double>(inside) / static_cast<double>(ts.size());
    return out;
}

inline quantum::TrainingSet random_training_set(unsigned num_features, unsigned num_classes, std::size_t size,
                                                Rng& rng) {
    quantum::TrainingSet ts;
    ts.num_features = num_features;
    ts.num_classes = num_classes;
    for (std::size_t p = 0; p < size; ++p) {
        ts.items.push_back({BitVector::from_integer(uniform_below(rng, 1ULL << num_features), num_features),
                            static_cast<unsigned>(uniform_below(rng, num_classes))});
    }
    return ts;
}

/// Reads the integer held by `qubits` (least significant first) from a basis label.
inline std::uint64_t read_register(sim::BasisIndex basis, const std::vector<sim::Qubit>& qubits) {
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) v |= ((basis >> qubits[j]) & 1ULL) << j;
    return v;
}

}  // namespace qknn::testing
