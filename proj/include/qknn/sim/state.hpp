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

#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qknn/sim/gate.hpp"

namespace qknn::sim {

/**
 * Pure state stored as a list of (basis, amplitude) pairs.
 *
 * Only nonzero amplitudes are kept. Permutation gates relabel entries in
 * place; H merges the two images of each entry and drops anything below
 * kPruneThreshold. The entry list is sorted lazily, so entries() always
 * returns ascending basis order but a const SparseState must not be shared
 * across threads while entries() may sort.
 */
class SparseState {
   public:
    using Entry = std::pair<BasisIndex, Amplitude>;

    static constexpr unsigned kMaxQubits = 63;
    static constexpr double kPruneThreshold = 1e-15;

    /// |0...0> on num_qubits qubits.
    explicit SparseState(unsigned num_qubits);

    static SparseState basis(unsigned num_qubits, BasisIndex basis);

    /// Builds from arbitrary entries; duplicate bases are summed and zeros dropped.
    /// The result is not normalized.
    static SparseState from_entries(unsigned num_qubits, std::vector<Entry> entries);

    static SparseState from_dense(std::span<const Amplitude> amplitudes);

    [[nodiscard]] unsigned num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t support_size() const { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const;
    [[nodiscard]] Amplitude amplitude(BasisIndex basis) const;

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);

    /// Keeps only entries whose `qubit` equals `bit`, rescaled by 1/sqrt(probability).
    void collapse(Qubit qubit, int bit, double probability);

    [[nodiscard]] double norm_squared() const;
    void normalize();

    [[nodiscard]] std::vector<Amplitude> to_dense() const;

    template <class F>
    void for_each_amplitude(F&& f) const {
        for (const auto& [basis, amp] : entries()) f(basis, amp);
    }

   private:
    SparseState() = default;
    void apply_hadamard(Qubit target);

    unsigned num_qubits_ = 1;
    mutable std::vector<Entry> entries_;
    mutable bool sorted_ = true;
};

/// Full 2^n amplitude array. Used as the cross-check backend and for small dense work.
class DenseState {
   public:
    static constexpr unsigned kMaxQubits = 30;

    explicit DenseState(unsigned num_qubits);

    static DenseState basis(unsigned num_qubits, BasisIndex basis);
    static DenseState from_entries(unsigned num_qubits, std::span<const SparseState::Entry> entries);
    static DenseState from_dense(std::vector<Amplitude> amplitudes);

    [[nodiscard]] unsigned num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }
    [[nodiscard]] Amplitude amplitude(BasisIndex basis) const;
    [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amplitudes_; }

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);
    void collapse(Qubit qubit, int bit, double probability);

    [[nodiscard]] double norm_squared() const;
    void normalize();

    [[nodiscard]] std::vector<Amplitude> to_dense() const { return amplitudes_; }

    /// Visits nonzero amplitudes in ascending basis order.
    template <class F>
    void for_each_amplitude(F&& f) const {
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if (amplitudes_[i] != Amplitude{}) f(static_cast<BasisIndex>(i), amplitudes_[i]);
        }
    }

   private:
    unsigned num_qubits_ = 1;
    std::vector<Amplitude> amplitudes_;
};

template <class S>
concept StateBackend = requires(S state, const S& cstate, const Gate& gate, const Circuit& circuit) {
    { cstate.num_qubits() } -> std::convertible_to<unsigned>;
    { cstate.amplitude(BasisIndex{}) } -> std::convertible_to<Amplitude>;
    { S::basis(1u, BasisIndex{}) } -> std::same_as<S>;
    state.apply(gate);
    state.apply(circuit);
    state.collapse(Qubit{}, 0, 1.0);
    { cstate.norm_squared() } -> std::convertible_to<double>;
};

static_assert(StateBackend<SparseState>);
static_assert(StateBackend<DenseState>);

}  // namespace qknn::sim
