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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qknn::sim {

using Qubit = unsigned;
/// Basis state label. Qubit q is bit q of the integer (qubit 0 = least significant bit).
using BasisIndex = std::uint64_t;
using Amplitude = std::complex<double>;

enum class GateKind { H, X, CNOT, CCX, MCX, SWAP, CSWAP, ID };

std::string_view to_string(GateKind kind);

/**
 * A single gate record.
 *
 * Every gate in the set is a (possibly controlled) X, a (possibly controlled)
 * SWAP, a Hadamard or the identity. `controls` holds the control qubits and
 * `targets` one qubit (H, X, CNOT, CCX, MCX, ID) or two (SWAP, CSWAP).
 */
struct Gate {
    GateKind kind = GateKind::ID;
    std::vector<Qubit> controls;
    std::vector<Qubit> targets;

    static Gate h(Qubit target);
    static Gate x(Qubit target);
    static Gate id(Qubit target);
    static Gate cnot(Qubit control, Qubit target);
    static Gate ccx(Qubit control0, Qubit control1, Qubit target);
    static Gate mcx(std::vector<Qubit> controls, Qubit target);
    static Gate swap(Qubit a, Qubit b);
    static Gate cswap(Qubit control, Qubit a, Qubit b);

    /// True for every gate except H: maps basis states to basis states.
    [[nodiscard]] bool is_permutation() const { return kind != GateKind::H; }

    [[nodiscard]] BasisIndex control_mask() const;

    /// Image of a basis state under a permutation gate.
    [[nodiscard]] BasisIndex permute(BasisIndex basis) const;

    /// Throws DomainError if an index is >= num_qubits, indices collide, or
    /// the operand counts do not fit the kind.
    void validate(unsigned num_qubits) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate sequence over a fixed register width.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(unsigned num_qubits) : num_qubits_(num_qubits) {}

    [[nodiscard]] unsigned num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    /// Validates against num_qubits() before appending.
    Circuit& add(Gate gate);
    Circuit& append(const Circuit& other);

    /// Every gate in the set is self-inverse, so the inverse is the reversed sequence.
    [[nodiscard]] Circuit inverse() const;

    /// Count of gates per kind, for reports.
    [[nodiscard]] std::vector<std::pair<GateKind, std::size_t>> gate_histogram() const;

   private:
    unsigned num_qubits_ = 0;
    std::vector<Gate> gates_;
};

}  // namespace qknn::sim
