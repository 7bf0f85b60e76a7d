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

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qknn/bits.hpp"
#include "qknn/knn.hpp"

namespace qknn::data {

using classical::FeatureVector;

// WDBC layout: id, diagnosis (M/B), then 30 reals: ten *_mean columns, ten
// *_se columns, ten *_worst columns.
inline constexpr std::size_t kWdbcFeatureCount = 30;
inline constexpr std::size_t kMeanFeatureCount = 10;

extern const std::array<const char*, kMeanFeatureCount> kMeanFeatureNames;

inline constexpr unsigned kBenign = 0;
inline constexpr unsigned kMalignant = 1;

struct RawRecord {
    std::string id;
    char diagnosis = 'B';
    std::array<double, kWdbcFeatureCount> features{};
};

struct CleaningReport {
    std::size_t rows_read = 0;  // data rows, header excluded
    std::size_t rows_kept = 0;
    std::size_t rows_dropped = 0;
    bool header_detected = false;
    /// reason code -> count: "field_count", "missing_value", "unparsable_number",
    /// "non_finite", "bad_diagnosis"
    std::map<std::string, std::size_t> drop_reasons;
};

struct LoadResult {
    std::vector<RawRecord> records;
    CleaningReport report;
};

/// Throws DataError when the file cannot be opened or holds no valid rows.
LoadResult load_csv(const std::filesystem::path& path);
LoadResult parse_csv(std::istream& in);

struct Dataset {
    std::vector<FeatureVector> x;
    std::vector<unsigned> y;  // malignant = 1, benign = 0
    std::vector<std::string> feature_names;

    [[nodiscard]] std::size_t size() const { return x.size(); }
    [[nodiscard]] Dataset subset(const std::vector<std::size_t>& indices) const;
};

/// Keeps the ten *_mean columns.
Dataset select_mean_features(const std::vector<RawRecord>& records);

struct SplitSpec {
    double train_fraction = 0.65;
    std::uint64_t seed = 42;

    void validate() const;
};

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;  // ascending row indices into the source dataset
    std::vector<std::size_t> test_indices;
    std::uint64_t hash = 0;  // FNV-1a over both index lists
};

/// Stratified shuffled split with |train| = round(fraction * N).
Split split(const Dataset& dataset, const SplitSpec& spec);

/// Per-feature affine map to [0, 1] fitted on training rows; constant features map to 0.
struct MinMaxScaler {
    std::vector<double> min;
    std::vector<double> max;

    static MinMaxScaler fit(const std::vector<FeatureVector>& train);
    [[nodiscard]] FeatureVector transform(const FeatureVector& x) const;
    [[nodiscard]] std::vector<FeatureVector> transform(const std::vector<FeatureVector>& xs) const;
};

struct Normalized {
    std::vector<FeatureVector> train;
    std::vector<FeatureVector> test;
    MinMaxScaler scaler;
};

Normalized min_max_normalize(const std::vector<FeatureVector>& train, const std::vector<FeatureVector>& test);

/// bit i = 1 iff feature i > the training median of feature i.
struct MedianBinarizer {
    std::vector<double> thresholds;

    static MedianBinarizer fit(const std::vector<FeatureVector>& train);
    [[nodiscard]] BitVector transform(const FeatureVector& x) const;
    [[nodiscard]] std::vector<BitVector> transform(const std::vector<FeatureVector>& xs) const;
};

struct Binarized {
    std::vector<BitVector> train;
    std::vector<BitVector> test;
    MedianBinarizer binarizer;
};

Binarized binarize(const std::vector<FeatureVector>& train, const std::vector<FeatureVector>& test);

}  // namespace qknn::data
