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
#include "qknn/grover.hpp"
#include "qknn/sim/ops.hpp"

using namespace qknn;
using namespace qknn::sim;
using namespace qknn::grover;

namespace {

double closed_form(unsigned n, unsigned iterations) {
    const double theta = std::asin(1.0 / std::sqrt(double(1u << n)));
    return std::pow(std::sin((2 * iterations + 1) * theta), 2);
}

DenseState uniform(unsigned n) {
    auto s = DenseState(n);
    for (unsigned q = 0; q < n; ++q) s.apply(Gate::h(q));
    return s;
}

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(BuildOracle, NegatesOnlyMarked) {
    for (unsigned n = 2; n <= 3; ++n) {
        for (BasisIndex m = 0; m < (1u << n); ++m) {
            auto s = uniform(n);
            const auto before = s.to_dense();
            s.apply(build_oracle(n, m));
            const auto after = s.to_dense();
            for (BasisIndex b = 0; b < (1u << n); ++b) {
                const double sign = b == m ? -1.0 : 1.0;
                EXPECT_LT(std::abs(after[b] - sign * before[b]), 1e-12) << n << " " << m << " " << b;
            }
        }
    }
    EXPECT_THROW(build_oracle(2, 4), DomainError);
}

TEST(BuildOracle, IsInvolution) {
    for (unsigned n = 1; n <= 4; ++n) {
        Circuit c = build_oracle(n, (1u << n) - 1);
        c.append(build_oracle(n, (1u << n) - 1));
        EXPECT_LT(dist(circuit_unitary(c), Eigen::MatrixXcd::Identity(1 << n, 1 << n)), 1e-12);
    }
}

TEST(BuildDiffusion, TwoQubitMatrixUpToSign) {
    Eigen::MatrixXcd expected(4, 4);
    expected << -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1;
    expected *= 0.5;
    const auto u = circuit_unitary(build_diffusion(2));
    EXPECT_LT(std::min(dist(u, expected), dist(u, -expected)), 1e-12);
}

TEST(BuildDiffusion, InvolutionAndFixesUniform) {
    for (unsigned n = 1; n <= 4; ++n) {
        Circuit c = build_diffusion(n);
        c.append(build_diffusion(n));
        EXPECT_LT(dist(circuit_unitary(c), Eigen::MatrixXcd::Identity(1 << n, 1 << n)), 1e-12);

        const auto s = uniform(n);
        auto d = s;
        d.apply(build_diffusion(n));
        EXPECT_NEAR(std::abs(inner_product(s, d)), 1.0, 1e-12);
    }
}

TEST(GroverSearch, TwoQubitsOneIteration) {
    Rng rng(1);
    for (BasisIndex m = 0; m < 4; ++m) {
        const auto r = grover_search({2, m, 1}, rng);
        EXPECT_NEAR(r.probabilities[m], 1.0, 1e-12);
        EXPECT_EQ(r.sampled, m);
    }
}

TEST(GroverSearch, ZeroIterationsIsUniform) {
    Rng rng(1);
    const auto r = grover_search({2, 1, 0}, rng);
    for (double p : r.probabilities) EXPECT_NEAR(p, 0.25, 1e-12);
}

TEST(GroverSearch, ThreeQubitsTwoIterations) {
    Rng rng(1);
    const auto r = grover_search({3, 0b101, 2}, rng);
    EXPECT_NEAR(r.probabilities[0b101], 0.9453, 1e-3);
    EXPECT_NEAR(r.probabilities[0b101], closed_form(3, 2), 1e-12);
}

TEST(GroverSearch, RejectsBadSpecs) {
    Rng rng(1);
    EXPECT_THROW(grover_search({2, 4, 1}, rng), DomainError);
    EXPECT_THROW(grover_search({2, 0, 5}, rng), DomainError);
    EXPECT_THROW(grover_search({0, 0, 1}, rng), DomainError);
    EXPECT_THROW(grover_search({kMaxGroverQubits + 1, 0, 1}, rng), ResourceError);
}

TEST(OptimalIterations, Examples) {
    EXPECT_EQ(optimal_iterations(1), 1u);
    EXPECT_EQ(optimal_iterations(2), 1u);
    EXPECT_EQ(optimal_iterations(4), 3u);
}

TEST(GroverProperties, OptimalIterationsAmplify) {
    Rng rng(3);
    for (unsigned n = 2; n <= 5; ++n) {
        const unsigned k = optimal_iterations(n);
        const auto r = grover_search({n, 1, k}, rng);
        EXPECT_GT(r.probabilities[1], 1.0 - 1.0 / (1u << n)) << n;
        EXPECT_NEAR(r.probabilities[1], closed_form(n, k), 1e-10);
    }
}

TEST(GroverProperties, IterationPreservesNorm) {
    auto s = uniform(4);
    s.apply(build_oracle(4, 6));
    s.apply(build_diffusion(4));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(GroverProperties, SymmetricUnderRelabeling) {
    Rng rng(4);
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned it = 0; it <= std::min(3u, 1u << n); ++it) {
            const double ref = grover_search({n, 0, it}, rng).probabilities[0];
            for (BasisIndex m = 1; m < (1u << n); ++m) {
                EXPECT_NEAR(grover_search({n, m, it}, rng).probabilities[m], ref, 1e-12);
            }
        }
    }
}
