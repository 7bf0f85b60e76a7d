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

#include "qknn/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qknn/errors.hpp"

namespace qknn::classical {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("euclidean_distance: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

unsigned hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) throw DomainError("hamming_distance: length mismatch");
    unsigned d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

std::string_view to_string(Metric metric) { return metric == Metric::Euclidean ? "euclidean" : "hamming"; }

KnnModel::KnnModel(std::vector<FeatureVector> features, std::vector<unsigned> labels, Metric metric, unsigned k)
    : features_(std::move(features)), labels_(std::move(labels)), metric_(metric), k_(k) {
    if (features_.empty()) throw DomainError("knn: empty training set");
    if (features_.size() != labels_.size()) throw DomainError("knn: features and labels differ in length");
    if (k_ < 1 || k_ > features_.size()) {
        throw DomainError("knn: k=" + std::to_string(k_) + " outside [1, " + std::to_string(features_.size()) + "]");
    }
    const std::size_t dim = features_.front().size();
    for (const auto& f : features_) {
        if (f.size() != dim) throw DomainError("knn: ragged feature vectors");
        for (double v : f) {
            if (!std::isfinite(v)) throw DomainError("knn: non-finite feature value");
        }
    }
    num_classes_ = *std::max_element(labels_.begin(), labels_.end()) + 1;
}

double KnnModel::distance(std::span<const double> a, std::span<const double> b) const {
    if (metric_ == Metric::Euclidean) return euclidean_distance(a, b);
    if (a.size() != b.size()) throw DomainError("hamming_distance: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1.0 : 0.0;
    return d;
}

std::vector<std::size_t> KnnModel::neighbor_order(std::span<const double> x, PredictStats* stats) const {
    std::vector<double> dist(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) dist[i] = distance(features_[i], x);
    if (stats) stats->distance_evaluations += features_.size();
    std::vector<std::size_t> order(features_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    return order;
}

unsigned KnnModel::predict(std::span<const double> x, PredictStats* stats) const {
    const auto order = neighbor_order(x, stats);
    return vote(order, labels_, k_, num_classes_);
}

unsigned vote(std::span<const std::size_t> order, std::span<const unsigned> labels, unsigned k,
              unsigned num_classes) {
    std::vector<unsigned> tally(num_classes, 0);
    for (unsigned i = 0; i < k && i < order.size(); ++i) ++tally[labels[order[i]]];
    return static_cast<unsigned>(std::max_element(tally.begin(), tally.end()) - tally.begin());
}

unsigned suggest_k(std::size_t num_training, bool binary) {
    if (num_training < 1) throw DomainError("suggest_k: need at least one training point");
    auto k = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(num_training))));
    k = std::max(k, 1U);
    if (binary && k % 2 == 0) ++k;
    return k;
}

std::vector<KSweepPoint> k_sweep(const std::vector<FeatureVector>& train_x, const std::vector<unsigned>& train_y,
                                 const std::vector<FeatureVector>& valid_x, const std::vector<unsigned>& valid_y,
                                 std::span<const unsigned> k_values, Metric metric) {
    if (valid_x.empty() || valid_x.size() != valid_y.size()) throw DomainError("k_sweep: bad validation set");
    if (k_values.empty()) throw DomainError("k_sweep: empty k range");
    const unsigned k_max = *std::max_element(k_values.begin(), k_values.end());
    const KnnModel model(train_x, train_y, metric, k_max);

    std::vector<std::size_t> correct(k_values.size(), 0);
    for (std::size_t v = 0; v < valid_x.size(); ++v) {
        const auto order = model.neighbor_order(valid_x[v]);
        for (std::size_t j = 0; j < k_values.size(); ++j) {
            if (k_values[j] < 1) throw DomainError("k_sweep: k must be >= 1");
            correct[j] += vote(order, train_y, k_values[j], model.num_classes()) == valid_y[v];
        }
    }
    std::vector<KSweepPoint> out;
    for (std::size_t j = 0; j < k_values.size(); ++j) {
        out.push_back({k_values[j], static_cast<double>(correct[j]) / static_cast<double>(valid_x.size())});
    }
    return out;
}

}  // namespace qknn::classical
