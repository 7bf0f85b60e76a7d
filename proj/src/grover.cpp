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

#include "qknn/grover.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qknn/errors.hpp"
#include "qknn/sim/ops.hpp"

namespace qknn::grover {
namespace {

void check_width(unsigned n) {
    if (n < 1) throw DomainError("grover needs at least one qubit");
    if (n > kMaxGroverQubits) {
        throw ResourceError("grover limited to " + std::to_string(kMaxGroverQubits) + " qubits");
    }
}

// Negates |1...1>: a multi-controlled Z built as H . MCX . H on the top qubit.
void add_phase_flip_all_ones(sim::Circuit& circuit, unsigned n) {
    const sim::Qubit top = n - 1;
    std::vector<sim::Qubit> controls;
    for (sim::Qubit q = 0; q < top; ++q) controls.push_back(q);
    circuit.add(sim::Gate::h(top));
    circuit.add(sim::Gate::mcx(std::move(controls), top));
    circuit.add(sim::Gate::h(top));
}

}  // namespace

void GroverSpec::validate() const {
    check_width(num_qubits);
    if (marked >> num_qubits != 0) throw DomainError("marked state out of range");
    if (iterations > (1ULL << num_qubits)) throw DomainError("iterations exceed 2^n");
}

sim::Circuit build_oracle(unsigned num_qubits, BasisIndex marked) {
    check_width(num_qubits);
    if (marked >> num_qubits != 0) throw DomainError("marked state out of range");
    sim::Circuit circuit(num_qubits);
    for (sim::Qubit q = 0; q < num_qubits; ++q) {
        if (!((marked >> q) & 1U)) circuit.add(sim::Gate::x(q));
    }
    add_phase_flip_all_ones(circuit, num_qubits);
    for (sim::Qubit q = 0; q < num_qubits; ++q) {
        if (!((marked >> q) & 1U)) circuit.add(sim::Gate::x(q));
    }
    return circuit;
}

sim::Circuit build_diffusion(unsigned num_qubits) {
    check_width(num_qubits);
    sim::Circuit circuit(num_qubits);
    for (sim::Qubit q = 0; q < num_qubits; ++q) circuit.add(sim::Gate::h(q));
    for (sim::Qubit q = 0; q < num_qubits; ++q) circuit.add(sim::Gate::x(q));
    add_phase_flip_all_ones(circuit, num_qubits);
    for (sim::Qubit q = 0; q < num_qubits; ++q) circuit.add(sim::Gate::x(q));
    for (sim::Qubit q = 0; q < num_qubits; ++q) circuit.add(sim::Gate::h(q));
    return circuit;
}

GroverResult grover_search(const GroverSpec& spec, Rng& rng) {
    spec.validate();
    const unsigned n = spec.num_qubits;
    sim::DenseState state(n);
    for (sim::Qubit q = 0; q < n; ++q) state.apply(sim::Gate::h(q));

    sim::Circuit step = build_oracle(n, spec.marked);
    step.append(build_diffusion(n));
    for (unsigned i = 0; i < spec.iterations; ++i) state.apply(step);

    GroverResult result;
    result.probabilities.reserve(state.dimension());
    std::map<std::uint64_t, double> dist;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const double p = std::norm(state.amplitudes()[i]);
        result.probabilities.push_back(p);
        dist[i] = p;
    }
    result.sampled = sim::sample_distribution(dist, 1, rng).begin()->first;
    return result;
}

unsigned optimal_iterations(unsigned num_qubits) {
    if (num_qubits < 1) throw DomainError("grover needs at least one qubit");
    const double n_items = std::ldexp(1.0, static_cast<int>(num_qubits));
    const auto k = static_cast<unsigned>(std::floor(std::numbers::pi / 4.0 * std::sqrt(n_items)));
    return k < 1 ? 1 : k;
}

}  // namespace qknn::grover
