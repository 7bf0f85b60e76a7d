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

#include "qknn/sim/ops.hpp"

namespace qknn::sim {

Counts sample_distribution(const std::map<std::uint64_t, double>& dist, std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw DomainError("shots must be >= 1");
    std::vector<std::uint64_t> outcomes;
    std::vector<double> cumulative;
    double total = 0.0;
    for (const auto& [outcome, p] : dist) {
        if (p <= 0.0) continue;
        total += p;
        outcomes.push_back(outcome);
        cumulative.push_back(total);
    }
    if (outcomes.empty() || total < 1e-9) throw InternalError("sampling from an empty distribution");
    Counts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), outcomes.size() - 1);
        ++counts[outcomes[idx]];
    }
    return counts;
}

Amplitude inner_product(const SparseState& a, const SparseState& b) {
    if (a.num_qubits() != b.num_qubits()) throw DomainError("inner product of states with different widths");
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    Amplitude sum{};
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].first < eb[j].first) {
            ++i;
        } else if (eb[j].first < ea[i].first) {
            ++j;
        } else {
            sum += std::conj(ea[i].second) * eb[j].second;
            ++i;
            ++j;
        }
    }
    return sum;
}

Amplitude inner_product(const DenseState& a, const DenseState& b) {
    if (a.num_qubits() != b.num_qubits()) throw DomainError("inner product of states with different widths");
    Amplitude sum{};
    const auto xa = a.amplitudes();
    const auto xb = b.amplitudes();
    for (std::size_t i = 0; i < xa.size(); ++i) sum += std::conj(xa[i]) * xb[i];
    return sum;
}

SparseState tensor(const SparseState& low, const SparseState& high) {
    const unsigned n = low.num_qubits() + high.num_qubits();
    if (n > SparseState::kMaxQubits) throw ResourceError("tensor product exceeds the sparse qubit limit");
    std::vector<SparseState::Entry> entries;
    entries.reserve(low.support_size() * high.support_size());
    for (const auto& [hb, ha] : high.entries()) {
        for (const auto& [lb, la] : low.entries()) {
            entries.emplace_back((hb << low.num_qubits()) | lb, la * ha);
        }
    }
    return SparseState::from_entries(n, std::move(entries));
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
    const unsigned n = circuit.num_qubits();
    if (n < 1) throw DomainError("circuit has no qubits");
    if (n > kMaxUnitaryQubits) {
        throw ResourceError("circuit_unitary limited to " + std::to_string(kMaxUnitaryQubits) + " qubits, got " +
                            std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        DenseState s = DenseState::basis(n, col);
        s.apply(circuit);
        const auto amps = s.amplitudes();
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = amps[row];
    }
    return u;
}

}  // namespace qknn::sim
