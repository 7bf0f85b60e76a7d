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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qknn/bits.hpp"

namespace qknn::classical {

using FeatureVector = std::vector<double>;

double euclidean_distance(std::span<const double> a, std::span<const double> b);
unsigned hamming_distance(const BitVector& a, const BitVector& b);

enum class Metric { Euclidean, Hamming };
std::string_view to_string(Metric metric);

struct PredictStats {
    std::size_t distance_evaluations = 0;
};

/**
 * Brute-force k-nearest-neighbors classifier.
 *
 * Neighbors are ordered by (distance, training index) and the vote goes to the
 * most frequent label among the first k, lowest label on ties. With the
 * Hamming metric, feature values are compared for equality.
 */
class KnnModel {
   public:
    KnnModel(std::vector<FeatureVector> features, std::vector<unsigned> labels, Metric metric, unsigned k);

    [[nodiscard]] unsigned predict(std::span<const double> x, PredictStats* stats = nullptr) const;

    /// Training indices sorted by (distance to x, index).
    [[nodiscard]] std::vector<std::size_t> neighbor_order(std::span<const double> x,
                                                          PredictStats* stats = nullptr) const;

    [[nodiscard]] unsigned k() const { return k_; }
    [[nodiscard]] Metric metric() const { return metric_; }
    [[nodiscard]] std::size_t size() const { return features_.size(); }
    [[nodiscard]] unsigned num_classes() const { return num_classes_; }
    [[nodiscard]] const std::vector<unsigned>& labels() const { return labels_; }

   private:
    [[nodiscard]] double distance(std::span<const double> a, std::span<const double> b) const;

    std::vector<FeatureVector> features_;
    std::vector<unsigned> labels_;
    Metric metric_;
    unsigned k_;
    unsigned num_classes_ = 0;
};

/// Majority label among the first k entries of `order`; lowest label wins ties.
unsigned vote(std::span<const std::size_t> order, std::span<const unsigned> labels, unsigned k,
              unsigned num_classes);

/// max(1, round(sqrt(N))), bumped to the next odd number for binary problems.
unsigned suggest_k(std::size_t num_training, bool binary = true);

struct KSweepPoint {
    unsigned k = 0;
    double accuracy = 0.0;
};

std::vector<KSweepPoint> k_sweep(const std::vector<FeatureVector>& train_x, const std::vector<unsigned>& train_y,
                                 const std::vector<FeatureVector>& valid_x, const std::vector<unsigned>& valid_y,
                                 std::span<const unsigned> k_values, Metric metric);

}  // namespace qknn::classical
