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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qknn/errors.hpp"
#include "qknn/sim/ops.hpp"
#include "support/test_support.hpp"

using namespace qknn;
using namespace qknn::sim;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double max_abs_diff(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double unitary_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SparseState, BasisPreparation) {
    auto s = new_basis_state(1, 0);
    ASSERT_EQ(s.support_size(), 1u);
    EXPECT_EQ(s.amplitude(0), Amplitude(1.0, 0.0));

    auto s5 = new_basis_state(3, 5);
    ASSERT_EQ(s5.support_size(), 1u);
    EXPECT_EQ(s5.entries()[0].first, 0b101u);
    EXPECT_EQ(s5.entries()[0].second, Amplitude(1.0, 0.0));

    EXPECT_THROW(new_basis_state(2, 4), DomainError);
    EXPECT_THROW(new_basis_state<DenseState>(2, 4), DomainError);
    EXPECT_THROW(SparseState(0), DomainError);
    EXPECT_THROW(SparseState(64), DomainError);
    EXPECT_NO_THROW(SparseState::basis(63, (1ULL << 62) | 1));
}

TEST(ApplyGate, HadamardOnZero) {
    auto s = apply_gate(new_basis_state(1, 0), Gate::h(0));
    EXPECT_NEAR(s.amplitude(0).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(s.amplitude(1).real(), kInvSqrt2, 1e-15);
    EXPECT_EQ(s.support_size(), 2u);
}

TEST(ApplyGate, XFlipsQubitZero) {
    auto s = apply_gate(new_basis_state(2, 0), Gate::x(0));
    ASSERT_EQ(s.support_size(), 1u);
    EXPECT_EQ(s.entries()[0].first, 0b01u);
}

TEST(ApplyGate, CswapMatchesEnumeratedPermutation) {
    // Oracle: 8x8 permutation built bit by bit.
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
    for (unsigned b = 0; b < 8; ++b) {
        unsigned q0 = b & 1, q1 = (b >> 1) & 1, q2 = (b >> 2) & 1;
        if (q0) std::swap(q1, q2);
        expected(q0 | (q1 << 1) | (q2 << 2), b) = 1.0;
    }
    Circuit c(3);
    c.add(Gate::cswap(0, 1, 2));
    EXPECT_LT(unitary_distance(circuit_unitary(c), expected), 1e-15);

    auto s = apply_gate(new_basis_state(3, 3), Gate::cswap(0, 1, 2));
    ASSERT_EQ(s.support_size(), 1u);
    EXPECT_EQ(s.entries()[0].first, 5u);
}

TEST(ApplyGate, RejectsBadIndices) {
    auto s = new_basis_state(3, 0);
    EXPECT_THROW(s.apply(Gate::x(3)), DomainError);
    EXPECT_THROW(s.apply(Gate::cnot(1, 1)), DomainError);
    EXPECT_THROW(s.apply(Gate::cswap(0, 1, 1)), DomainError);
    EXPECT_THROW(s.apply(Gate::mcx({0, 2}, 2)), DomainError);
    Circuit c(2);
    EXPECT_THROW(c.add(Gate::x(2)), DomainError);
    EXPECT_THROW(c.add(Gate{GateKind::CCX, {0}, {1}}), DomainError);
}

TEST(ApplyCircuit, Identities) {
    Rng rng(7);
    const auto psi = qknn::testing::random_sparse_state(3, rng);

    EXPECT_LT(max_abs_diff(apply_circuit(psi, Circuit(3)).to_dense(), psi.to_dense()), 1e-15);

    Circuit xx(3);
    xx.add(Gate::x(0)).add(Gate::x(0));
    EXPECT_LT(max_abs_diff(apply_circuit(psi, xx).to_dense(), psi.to_dense()), 1e-15);

    Circuit hh(3);
    hh.add(Gate::h(0)).add(Gate::h(0));
    EXPECT_LT(max_abs_diff(apply_circuit(psi, hh).to_dense(), psi.to_dense()), 1e-12);
}

TEST(ProbabilityOf, Examples) {
    EXPECT_DOUBLE_EQ(probability_of(new_basis_state(1, 0), 0, 0), 1.0);

    auto plus = apply_gate(new_basis_state(1, 0), Gate::h(0));
    EXPECT_NEAR(probability_of(plus, 0, 1), 0.5, 1e-15);

    const double a = 1.0 / std::sqrt(3.0);
    auto s = SparseState::from_entries(2, {{0, a}, {1, a}, {2, a}});
    EXPECT_NEAR(probability_of(s, 1, 0), 2.0 / 3.0, 1e-15);
    EXPECT_THROW(probability_of(s, 2, 0), DomainError);
}

TEST(MeasureQubit, DeterministicAndCollapse) {
    Rng rng(1);
    auto [rec, post] = measure_qubit(new_basis_state(1, 1), 0, rng);
    EXPECT_EQ(rec.bit, 1);
    EXPECT_DOUBLE_EQ(rec.probability, 1.0);
    EXPECT_EQ(post.amplitude(1), Amplitude(1.0, 0.0));

    auto plus = apply_gate(new_basis_state(1, 0), Gate::h(0));
    bool saw_zero = false;
    for (int i = 0; i < 50 && !saw_zero; ++i) {
        auto [r, p] = measure_qubit(plus, 0, rng);
        if (r.bit == 0) {
            saw_zero = true;
            ASSERT_EQ(p.support_size(), 1u);
            EXPECT_NEAR(p.amplitude(0).real(), 1.0, 1e-15);
            EXPECT_NEAR(r.probability, 0.5, 1e-15);
        }
    }
    EXPECT_TRUE(saw_zero);
}

TEST(MeasureQubit, FrequencyWithinThreeSigma) {
    Rng rng(2024);
    const auto plus = apply_gate(new_basis_state(1, 0), Gate::h(0));
    int ones = 0;
    for (int i = 0; i < 4096; ++i) ones += measure_qubit(plus, 0, rng).first.bit;
    const double sigma = std::sqrt(0.25 / 4096.0);
    EXPECT_NEAR(ones / 4096.0, 0.5, 3 * sigma);
}

TEST(SampleCounts, Examples) {
    Rng rng(3);
    const Qubit q0[] = {0};
    auto counts = sample_counts(new_basis_state(1, 0), q0, 100, rng);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(counts[0], 100u);

    auto bell = new_basis_state(2, 0);
    bell.apply(Gate::h(0));
    bell.apply(Gate::cnot(0, 1));
    const Qubit both[] = {0, 1};
    auto bc = sample_counts(bell, both, 4096, rng);
    std::uint64_t total = 0;
    for (auto [outcome, count] : bc) {
        EXPECT_TRUE(outcome == 0b00 || outcome == 0b11);
        total += count;
    }
    EXPECT_EQ(total, 4096u);
    EXPECT_NEAR(bc[0] / 4096.0, 0.5, 3 * std::sqrt(0.25 / 4096.0));
    EXPECT_THROW(sample_counts(bell, both, 0, rng), DomainError);
}

TEST(SampleCounts, TotalVariationWithinFiveSigma) {
    Rng rng(99);
    const auto psi = qknn::testing::random_sparse_state(3, rng);
    const Qubit all[] = {0, 1, 2};
    const auto exact = marginal_distribution(psi, all);
    const std::uint64_t shots = 4096;
    const auto counts = sample_counts(psi, all, shots, rng);
    double tv = 0.0;
    double bound = 0.0;
    for (const auto& [outcome, p] : exact) {
        const double freq = counts.contains(outcome) ? counts.at(outcome) / double(shots) : 0.0;
        tv += 0.5 * std::abs(freq - p);
        bound += 0.5 * 5.0 * std::sqrt(p * (1 - p) / shots);
    }
    EXPECT_LT(tv, bound);
}

TEST(InnerProduct, Examples) {
    EXPECT_EQ(inner_product(new_basis_state(1, 0), new_basis_state(1, 0)), Amplitude(1.0, 0.0));
    EXPECT_EQ(inner_product(new_basis_state(1, 0), new_basis_state(1, 1)), Amplitude(0.0, 0.0));
    auto plus = apply_gate(new_basis_state(1, 0), Gate::h(0));
    EXPECT_NEAR(inner_product(plus, new_basis_state(1, 0)).real(), kInvSqrt2, 1e-15);
    EXPECT_THROW(inner_product(new_basis_state(1, 0), new_basis_state(2, 0)), DomainError);

    // conjugate-linear in the first argument
    auto a = SparseState::from_entries(1, {{0, Amplitude(0, 1)}});
    EXPECT_EQ(inner_product(a, new_basis_state(1, 0)), Amplitude(0, -1));
}

TEST(CircuitUnitary, PauliXAndHadamard) {
    Circuit x(1);
    x.add(Gate::x(0));
    Eigen::MatrixXcd px(2, 2);
    px << 0, 1, 1, 0;
    EXPECT_LT(unitary_distance(circuit_unitary(x), px), 1e-15);

    Circuit h(1);
    h.add(Gate::h(0));
    Eigen::MatrixXcd ph(2, 2);
    ph << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    EXPECT_LT(unitary_distance(circuit_unitary(h), ph), 1e-15);

    EXPECT_THROW(circuit_unitary(Circuit(kMaxUnitaryQubits + 1)), ResourceError);
}

TEST(CircuitUnitary, RandomCircuitsAreUnitary) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = qknn::testing::random_circuit(4, 30, rng);
        const auto u = circuit_unitary(c);
        const auto id = Eigen::MatrixXcd::Identity(16, 16);
        EXPECT_LT(unitary_distance(u.adjoint() * u, id), 1e-10);
    }
}

// Properties

TEST(Properties, NormPreservation) {
    Rng rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 3 + static_cast<unsigned>(uniform_below(rng, 10));  // 3..12
        auto s = qknn::testing::random_sparse_state(n, rng);
        s.apply(qknn::testing::random_gate(n, rng));
        EXPECT_LT(std::abs(std::sqrt(s.norm_squared()) - 1.0), 1e-12);
    }
}

TEST(Properties, BackendAgreement) {
    Rng rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 3 + static_cast<unsigned>(uniform_below(rng, 10));
        const unsigned gates = 1 + static_cast<unsigned>(uniform_below(rng, 50));
        const auto c = qknn::testing::random_circuit(n, gates, rng);
        const BasisIndex start = uniform_below(rng, 1ULL << n);
        auto sparse = SparseState::basis(n, start);
        auto dense = DenseState::basis(n, start);
        sparse.apply(c);
        dense.apply(c);
        EXPECT_LT(max_abs_diff(sparse.to_dense(), dense.to_dense()), 1e-10) << "trial " << trial;
    }
}

TEST(Properties, PermutationGatesPreserveSupport) {
    for (unsigned n = 3; n <= 4; ++n) {
        std::vector<Gate> gates = {Gate::x(1),          Gate::cnot(0, 2),    Gate::ccx(0, 1, 2),
                                   Gate::mcx({0, 1, 2}, n - 1 == 2 ? 0 : 3), Gate::swap(0, 2),
                                   Gate::cswap(2, 0, 1)};
        for (const auto& g : gates) {
            if (g.kind == GateKind::MCX && n == 3) continue;
            std::vector<int> hits(1u << n, 0);
            for (BasisIndex b = 0; b < (1u << n); ++b) {
                auto s = SparseState::basis(n, b);
                s.apply(g);
                ASSERT_EQ(s.support_size(), 1u) << g.to_string();
                ++hits[s.entries()[0].first];
            }
            for (int h : hits) EXPECT_EQ(h, 1) << g.to_string();
        }
    }
}

TEST(Properties, Involutions) {
    for (const auto& g : {Gate::x(0), Gate::swap(1, 3), Gate::h(2), Gate::cswap(0, 1, 2)}) {
        Circuit c(4);
        c.add(g).add(g);
        EXPECT_LT(unitary_distance(circuit_unitary(c), Eigen::MatrixXcd::Identity(16, 16)), 1e-12) << g.to_string();
    }
}

TEST(Properties, McxReducesToSmallerGates) {
    auto u = [](const Gate& g) {
        Circuit c(3);
        c.add(g);
        return circuit_unitary(c);
    };
    EXPECT_LT(unitary_distance(u(Gate::mcx({}, 1)), u(Gate::x(1))), 1e-12);
    EXPECT_LT(unitary_distance(u(Gate::mcx({2}, 1)), u(Gate::cnot(2, 1))), 1e-12);
    EXPECT_LT(unitary_distance(u(Gate::mcx({0, 2}, 1)), u(Gate::ccx(0, 2, 1))), 1e-12);
}

TEST(SparseState, HadamardPrunesCancellation) {
    // H|+> = |0>: the |1> component cancels and must not linger.
    auto s = new_basis_state(1, 0);
    s.apply(Gate::h(0));
    s.apply(Gate::h(0));
    EXPECT_EQ(s.support_size(), 1u);
}

TEST(Tensor, PlacesLowQubitsFirst) {
    auto t = tensor(new_basis_state(1, 1), new_basis_state(2, 0b10));
    ASSERT_EQ(t.num_qubits(), 3u);
    EXPECT_EQ(t.entries()[0].first, 0b101u);
}
