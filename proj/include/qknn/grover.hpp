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

#include <vector>

#include "qknn/random.hpp"
#include "qknn/sim/gate.hpp"

namespace qknn::grover {

using sim::BasisIndex;

// Grover runs on the dense backend; the full outcome table is returned.
inline constexpr unsigned kMaxGroverQubits = 20;

struct GroverSpec {
    unsigned num_qubits = 2;
    BasisIndex marked = 0;
    unsigned iterations = 1;

    void validate() const;
};

/// Phase oracle: negates the amplitude of |marked> and nothing else.
sim::Circuit build_oracle(unsigned num_qubits, BasisIndex marked);

/// Reflection about the uniform superposition. Realized as H^n (I - 2|0><0|) H^n,
/// which is 2|s><s| - I up to a global sign of -1.
sim::Circuit build_diffusion(unsigned num_qubits);

struct GroverResult {
    std::vector<double> probabilities;  // indexed by basis state
    BasisIndex sampled = 0;
};

GroverResult grover_search(const GroverSpec& spec, Rng& rng);

/// floor(pi/4 * sqrt(2^n)), at least 1.
unsigned optimal_iterations(unsigned num_qubits);

}  // namespace qknn::grover
