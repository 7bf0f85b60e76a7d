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

#include "qknn/sim/gate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qknn/errors.hpp"

namespace qknn::sim {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CCX: return "CCX";
        case GateKind::MCX: return "MCX";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CSWAP: return "CSWAP";
        case GateKind::ID: return "ID";
    }
    return "?";
}

Gate Gate::h(Qubit target) { return {GateKind::H, {}, {target}}; }
Gate Gate::x(Qubit target) { return {GateKind::X, {}, {target}}; }
Gate Gate::id(Qubit target) { return {GateKind::ID, {}, {target}}; }
Gate Gate::cnot(Qubit control, Qubit target) { return {GateKind::CNOT, {control}, {target}}; }
Gate Gate::ccx(Qubit control0, Qubit control1, Qubit target) {
    return {GateKind::CCX, {control0, control1}, {target}};
}
Gate Gate::mcx(std::vector<Qubit> controls, Qubit target) {
    return {GateKind::MCX, std::move(controls), {target}};
}
Gate Gate::swap(Qubit a, Qubit b) { return {GateKind::SWAP, {}, {a, b}}; }
Gate Gate::cswap(Qubit control, Qubit a, Qubit b) { return {GateKind::CSWAP, {control}, {a, b}}; }

BasisIndex Gate::control_mask() const {
    BasisIndex mask = 0;
    for (Qubit c : controls) mask |= BasisIndex{1} << c;
    return mask;
}

BasisIndex Gate::permute(BasisIndex basis) const {
    switch (kind) {
        case GateKind::ID:
        case GateKind::H:
            return basis;
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX: {
            const BasisIndex mask = control_mask();
            if ((basis & mask) != mask) return basis;
            return basis ^ (BasisIndex{1} << targets[0]);
        }
        case GateKind::SWAP:
        case GateKind::CSWAP: {
            const BasisIndex mask = control_mask();
            if ((basis & mask) != mask) return basis;
            const BasisIndex a = (basis >> targets[0]) & 1U;
            const BasisIndex b = (basis >> targets[1]) & 1U;
            if (a == b) return basis;
            return basis ^ ((BasisIndex{1} << targets[0]) | (BasisIndex{1} << targets[1]));
        }
    }
    return basis;
}

void Gate::validate(unsigned num_qubits) const {
    std::size_t want_controls = 0;
    std::size_t want_targets = 1;
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::ID: break;
        case GateKind::CNOT: want_controls = 1; break;
        case GateKind::CCX: want_controls = 2; break;
        case GateKind::MCX: want_controls = controls.size(); break;
        case GateKind::SWAP: want_targets = 2; break;
        case GateKind::CSWAP:
            want_controls = 1;
            want_targets = 2;
            break;
    }
    if (controls.size() != want_controls || targets.size() != want_targets) {
        throw DomainError(std::string(sim::to_string(kind)) + ": wrong operand count");
    }
    std::vector<Qubit> all(controls);
    all.insert(all.end(), targets.begin(), targets.end());
    for (Qubit q : all) {
        if (q >= num_qubits) {
            throw DomainError(to_string() + ": qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(num_qubits) + " qubits");
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw DomainError(to_string() + ": qubit indices collide");
    }
}

std::string Gate::to_string() const {
    std::ostringstream out;
    out << sim::to_string(kind) << '(';
    bool first = true;
    for (Qubit c : controls) {
        out << (first ? "" : ",") << 'c' << c;
        first = false;
    }
    for (Qubit t : targets) {
        out << (first ? "" : ",") << t;
        first = false;
    }
    out << ')';
    return out.str();
}

Circuit& Circuit::add(Gate gate) {
    gate.validate(num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ > num_qubits_) {
        throw DomainError("cannot append a circuit over more qubits");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.gates_.assign(gates_.rbegin(), gates_.rend());
    return out;
}

std::vector<std::pair<GateKind, std::size_t>> Circuit::gate_histogram() const {
    std::map<GateKind, std::size_t> counts;
    for (const auto& g : gates_) ++counts[g.kind];
    return {counts.begin(), counts.end()};
}

}  // namespace qknn::sim
