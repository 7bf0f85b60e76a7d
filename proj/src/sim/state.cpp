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

#include "qknn/sim/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qknn/errors.hpp"

namespace qknn::sim {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_width(unsigned num_qubits, unsigned max_qubits) {
    if (num_qubits < 1 || num_qubits > max_qubits) {
        throw DomainError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                          std::to_string(max_qubits) + "]");
    }
}

void check_basis(unsigned num_qubits, BasisIndex basis) {
    if (num_qubits < 64 && basis >> num_qubits != 0) {
        throw DomainError("basis index " + std::to_string(basis) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
}

bool by_basis(const SparseState::Entry& a, const SparseState::Entry& b) { return a.first < b.first; }

// Sorts, sums duplicates and drops entries with |amp| < threshold.
void canonicalize(std::vector<SparseState::Entry>& entries, double threshold) {
    std::sort(entries.begin(), entries.end(), by_basis);
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        BasisIndex basis = entries[i].first;
        Amplitude sum{};
        for (; i < entries.size() && entries[i].first == basis; ++i) sum += entries[i].second;
        if (std::abs(sum) >= threshold && sum != Amplitude{}) entries[out++] = {basis, sum};
    }
    entries.resize(out);
}

}  // namespace

// ---------------------------------------------------------------------------
// SparseState

SparseState::SparseState(unsigned num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits, kMaxQubits);
    entries_.emplace_back(0, Amplitude{1.0, 0.0});
}

SparseState SparseState::basis(unsigned num_qubits, BasisIndex basis) {
    check_width(num_qubits, kMaxQubits);
    check_basis(num_qubits, basis);
    SparseState s;
    s.num_qubits_ = num_qubits;
    s.entries_.emplace_back(basis, Amplitude{1.0, 0.0});
    return s;
}

SparseState SparseState::from_entries(unsigned num_qubits, std::vector<Entry> entries) {
    check_width(num_qubits, kMaxQubits);
    for (const auto& [basis, amp] : entries) {
        check_basis(num_qubits, basis);
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw DomainError("non-finite amplitude");
        }
    }
    SparseState s;
    s.num_qubits_ = num_qubits;
    canonicalize(entries, 0.0);
    s.entries_ = std::move(entries);
    return s;
}

SparseState SparseState::from_dense(std::span<const Amplitude> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw DomainError("dense length must be a power of two >= 2");
    unsigned n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < dim; ++i) {
        if (amplitudes[i] != Amplitude{}) entries.emplace_back(i, amplitudes[i]);
    }
    return from_entries(n, std::move(entries));
}

const std::vector<SparseState::Entry>& SparseState::entries() const {
    if (!sorted_) {
        std::sort(entries_.begin(), entries_.end(), by_basis);
        sorted_ = true;
    }
    return entries_;
}

Amplitude SparseState::amplitude(BasisIndex basis) const {
    const auto& es = entries();
    auto it = std::lower_bound(es.begin(), es.end(), Entry{basis, {}}, by_basis);
    if (it != es.end() && it->first == basis) return it->second;
    return {};
}

void SparseState::apply(const Gate& gate) {
    gate.validate(num_qubits_);
    if (gate.kind == GateKind::ID) return;
    if (gate.kind == GateKind::H) {
        apply_hadamard(gate.targets[0]);
        return;
    }
    for (auto& entry : entries_) entry.first = gate.permute(entry.first);
    sorted_ = false;
}

void SparseState::apply(const Circuit& circuit) {
    if (circuit.num_qubits() > num_qubits_) {
        throw DomainError("circuit width " + std::to_string(circuit.num_qubits()) + " exceeds state width " +
                          std::to_string(num_qubits_));
    }
    for (const auto& gate : circuit.gates()) apply(gate);
}

void SparseState::apply_hadamard(Qubit target) {
    const BasisIndex bit = BasisIndex{1} << target;
    std::vector<Entry> next;
    next.reserve(entries_.size() * 2);
    for (const auto& [basis, amp] : entries_) {
        const Amplitude scaled = amp * kInvSqrt2;
        next.emplace_back(basis & ~bit, scaled);
        next.emplace_back(basis | bit, (basis & bit) ? -scaled : scaled);
    }
    canonicalize(next, kPruneThreshold);
    entries_ = std::move(next);
    sorted_ = true;
}

void SparseState::collapse(Qubit qubit, int bit, double probability) {
    if (qubit >= num_qubits_) throw DomainError("qubit out of range");
    if (probability < 1e-9) throw InternalError("collapse onto a branch with vanishing norm");
    const BasisIndex want = static_cast<BasisIndex>(bit & 1) << qubit;
    const double scale = 1.0 / std::sqrt(probability);
    std::erase_if(entries_, [&](const Entry& e) { return (e.first & (BasisIndex{1} << qubit)) != want; });
    for (auto& e : entries_) e.second *= scale;
}

double SparseState::norm_squared() const {
    double total = 0.0;
    for (const auto& e : entries_) total += std::norm(e.second);
    return total;
}

void SparseState::normalize() {
    const double norm = std::sqrt(norm_squared());
    if (norm < 1e-12) throw InternalError("cannot normalize a zero state");
    for (auto& e : entries_) e.second /= norm;
}

std::vector<Amplitude> SparseState::to_dense() const {
    check_width(num_qubits_, DenseState::kMaxQubits);
    std::vector<Amplitude> out(std::size_t{1} << num_qubits_);
    for (const auto& [basis, amp] : entries_) out[basis] = amp;
    return out;
}

// ---------------------------------------------------------------------------
// DenseState

DenseState::DenseState(unsigned num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits, kMaxQubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{});
    amplitudes_[0] = 1.0;
}

DenseState DenseState::basis(unsigned num_qubits, BasisIndex basis) {
    check_width(num_qubits, kMaxQubits);
    check_basis(num_qubits, basis);
    DenseState s(num_qubits);
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[basis] = 1.0;
    return s;
}

DenseState DenseState::from_entries(unsigned num_qubits, std::span<const SparseState::Entry> entries) {
    DenseState s(num_qubits);
    s.amplitudes_[0] = 0.0;
    for (const auto& [basis, amp] : entries) {
        check_basis(num_qubits, basis);
        s.amplitudes_[basis] += amp;
    }
    return s;
}

DenseState DenseState::from_dense(std::vector<Amplitude> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw DomainError("dense length must be a power of two >= 2");
    unsigned n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    check_width(n, kMaxQubits);
    DenseState s(n);
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

Amplitude DenseState::amplitude(BasisIndex basis) const {
    check_basis(num_qubits_, basis);
    return amplitudes_[basis];
}

void DenseState::apply(const Gate& gate) {
    gate.validate(num_qubits_);
    const std::size_t dim = amplitudes_.size();
    switch (gate.kind) {
        case GateKind::ID: return;
        case GateKind::H: {
            const std::size_t bit = std::size_t{1} << gate.targets[0];
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const Amplitude a = amplitudes_[i];
                const Amplitude b = amplitudes_[i | bit];
                amplitudes_[i] = (a + b) * kInvSqrt2;
                amplitudes_[i | bit] = (a - b) * kInvSqrt2;
            }
            return;
        }
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX: {
            const std::size_t mask = gate.control_mask();
            const std::size_t bit = std::size_t{1} << gate.targets[0];
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & bit) || (i & mask) != mask) continue;
                std::swap(amplitudes_[i], amplitudes_[i | bit]);
            }
            return;
        }
        case GateKind::SWAP:
        case GateKind::CSWAP: {
            const std::size_t mask = gate.control_mask();
            const std::size_t a = std::size_t{1} << gate.targets[0];
            const std::size_t b = std::size_t{1} << gate.targets[1];
            for (std::size_t i = 0; i < dim; ++i) {
                // visit each swapped pair once: a set, b clear
                if (!(i & a) || (i & b) || (i & mask) != mask) continue;
                std::swap(amplitudes_[i], amplitudes_[i ^ a ^ b]);
            }
            return;
        }
    }
}

void DenseState::apply(const Circuit& circuit) {
    if (circuit.num_qubits() > num_qubits_) {
        throw DomainError("circuit width " + std::to_string(circuit.num_qubits()) + " exceeds state width " +
                          std::to_string(num_qubits_));
    }
    for (const auto& gate : circuit.gates()) apply(gate);
}

void DenseState::collapse(Qubit qubit, int bit, double probability) {
    if (qubit >= num_qubits_) throw DomainError("qubit out of range");
    if (probability < 1e-9) throw InternalError("collapse onto a branch with vanishing norm");
    const std::size_t q = std::size_t{1} << qubit;
    const std::size_t want = bit ? q : 0;
    const double scale = 1.0 / std::sqrt(probability);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] = (i & q) == want ? amplitudes_[i] * scale : Amplitude{};
    }
}

double DenseState::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

void DenseState::normalize() {
    const double norm = std::sqrt(norm_squared());
    if (norm < 1e-12) throw InternalError("cannot normalize a zero state");
    for (auto& a : amplitudes_) a /= norm;
}

}  // namespace qknn::sim
