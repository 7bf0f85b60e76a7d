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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "qknn/data.hpp"
#include "qknn/errors.hpp"

using namespace qknn;
using namespace qknn::data;

namespace {

std::string row(const std::string& id, const std::string& diag, double base = 1.0, const std::string& override_cell = "") {
    std::ostringstream os;
    os << id << ',' << diag;
    for (std::size_t j = 0; j < kWdbcFeatureCount; ++j) {
        os << ',';
        if (j == 3 && !override_cell.empty())
            os << override_cell;
        else
            os << base + static_cast<double>(j);
    }
    return os.str();
}

LoadResult parse(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

Dataset toy(std::size_t benign, std::size_t malignant) {
    Dataset d;
    for (std::size_t i = 0; i < benign + malignant; ++i) {
        d.x.push_back({static_cast<double>(i)});
        d.y.push_back(i < benign ? kBenign : kMalignant);
    }
    d.feature_names = {"f"};
    return d;
}

}  // namespace

TEST(LoadCsv, WellFormedRows) {
    const auto r = parse(row("1", "M") + "\n" + row("2", "B") + "\n" + row("3", "B") + "\n");
    EXPECT_EQ(r.records.size(), 3u);
    EXPECT_EQ(r.report.rows_dropped, 0u);
    EXPECT_FALSE(r.report.header_detected);
    EXPECT_EQ(r.records[0].diagnosis, 'M');
    EXPECT_DOUBLE_EQ(r.records[0].features[29], 30.0);
}

TEST(LoadCsv, HeaderAndDrops) {
    std::string header = "id,diagnosis";
    for (int j = 0; j < 30; ++j) header += ",f" + std::to_string(j);
    const auto r = parse(header + "\n" + row("1", "M") + "\n" + row("2", "B", 1.0, "?") + "\n" + row("3", "X") +
                         "\n" + row("4", "B", 1.0, "abc") + "\n" + row("5", "B", 1.0, "inf") + "\n1,M,2\n" +
                         row("6", "B") + "\n");
    EXPECT_TRUE(r.report.header_detected);
    EXPECT_EQ(r.report.rows_read, 7u);
    EXPECT_EQ(r.report.rows_kept, 2u);
    EXPECT_EQ(r.report.rows_dropped, 5u);
    EXPECT_EQ(r.report.drop_reasons.at("missing_value"), 1u);
    EXPECT_EQ(r.report.drop_reasons.at("bad_diagnosis"), 1u);
    EXPECT_EQ(r.report.drop_reasons.at("unparsable_number"), 1u);
    EXPECT_EQ(r.report.drop_reasons.at("non_finite"), 1u);
    EXPECT_EQ(r.report.drop_reasons.at("field_count"), 1u);
}

TEST(LoadCsv, Errors) {
    EXPECT_THROW(parse(row("1", "Q") + "\n"), DataError);
    EXPECT_THROW(parse(""), DataError);
    EXPECT_THROW(load_csv("/nonexistent/wdbc.csv"), DataError);
}

TEST(LoadCsv, BundledDatasetBalance) {
    const auto r = load_csv(QKNN_TEST_DATA);
    EXPECT_EQ(r.report.rows_dropped, 0u);
    const auto d = select_mean_features(r.records);
    ASSERT_EQ(d.size(), 569u);
    EXPECT_EQ(std::count(d.y.begin(), d.y.end(), kBenign), 357);
    EXPECT_EQ(std::count(d.y.begin(), d.y.end(), kMalignant), 212);
    EXPECT_EQ(d.feature_names.size(), 10u);
    EXPECT_EQ(d.feature_names.back(), "fractal_dimension_mean");
}

TEST(SelectMeanFeatures, ShapesAndLabels) {
    const auto r = parse(row("1", "M") + "\n" + row("2", "B") + "\n");
    const auto d = select_mean_features(r.records);
    ASSERT_EQ(d.x[0].size(), 10u);
    EXPECT_EQ(d.x[0].front(), 1.0);
    EXPECT_EQ(d.x[0].back(), 10.0);
    EXPECT_EQ(d.y[0], 1u);
    EXPECT_EQ(d.y[1], 0u);
    EXPECT_THROW(select_mean_features({}), DataError);
}

TEST(Split, SizesDeterminismAndStratification) {
    const auto d = toy(60, 40);
    const auto s = split(d, {0.65, 42});
    EXPECT_EQ(s.train.size(), 65u);
    EXPECT_EQ(s.test.size(), 35u);
    const auto again = split(d, {0.65, 42});
    EXPECT_EQ(s.train_indices, again.train_indices);
    EXPECT_EQ(s.hash, again.hash);
    const auto other = split(d, {0.65, 43});
    EXPECT_NE(s.train_indices, other.train_indices);
    EXPECT_NE(s.hash, other.hash);
    EXPECT_EQ(other.train.size(), 65u);

    const auto malignant = std::count(s.train.y.begin(), s.train.y.end(), kMalignant);
    EXPECT_LE(std::abs(malignant - 26), 1);  // 0.65 * 40

    std::set<std::size_t> all(s.train_indices.begin(), s.train_indices.end());
    all.insert(s.test_indices.begin(), s.test_indices.end());
    EXPECT_EQ(all.size(), 100u);
    EXPECT_TRUE(std::is_sorted(s.train_indices.begin(), s.train_indices.end()));

    EXPECT_THROW(split(d, {1.0, 1}), DomainError);
    EXPECT_THROW(split(d, {0.0, 1}), DomainError);
}

TEST(Split, WdbcStratification) {
    const auto d = select_mean_features(load_csv(QKNN_TEST_DATA).records);
    for (std::uint64_t seed = 42; seed < 52; ++seed) {
        const auto s = split(d, {0.65, seed});
        EXPECT_EQ(s.train.size(), 370u);  // llround(0.65 * 569)
        const auto m = std::count(s.train.y.begin(), s.train.y.end(), kMalignant);
        EXPECT_LE(std::abs(static_cast<double>(m) - 0.65 * 212), 1.0);
    }
}

TEST(MinMax, Examples) {
    const auto n = min_max_normalize({{2.0, 7.0}, {4.0, 7.0}}, {{3.0, 7.0}, {5.0, 1.0}, {0.0, 9.0}});
    EXPECT_DOUBLE_EQ(n.train[0][0], 0.0);
    EXPECT_DOUBLE_EQ(n.train[1][0], 1.0);
    EXPECT_DOUBLE_EQ(n.test[0][0], 0.5);
    EXPECT_DOUBLE_EQ(n.test[0][1], 0.0);
    EXPECT_DOUBLE_EQ(n.test[1][0], 1.0);
    EXPECT_DOUBLE_EQ(n.test[2][0], 0.0);
    EXPECT_DOUBLE_EQ(n.train[1][1], 0.0);
    EXPECT_THROW(min_max_normalize({}, {}), DomainError);
}

TEST(Binarize, Examples) {
    const std::vector<FeatureVector> train = {{1, 5}, {2, 5}, {3, 5}, {4, 5}, {5, 5}};
    const auto b = binarize(train, {{4, 5}, {2, 6}, {3, 5}});
    EXPECT_DOUBLE_EQ(b.binarizer.thresholds[0], 3.0);
    EXPECT_EQ(b.test[0].to_string(), "10");
    EXPECT_EQ(b.test[1].to_string(), "01");
    EXPECT_EQ(b.test[2].to_string(), "00");
    for (const auto& bits : b.train) EXPECT_EQ(bits[1], 0);

    const auto even = MedianBinarizer::fit({{1}, {2}, {3}, {4}});
    EXPECT_DOUBLE_EQ(even.thresholds[0], 2.5);
}

TEST(Pipeline, NoTestLeakage) {
    const std::vector<FeatureVector> train = {{1, 4}, {3, 2}, {2, 8}};
    const auto a = min_max_normalize(train, {{0, 0}});
    const auto b = min_max_normalize(train, {{100, -50}});
    EXPECT_EQ(a.scaler.min, b.scaler.min);
    EXPECT_EQ(a.scaler.max, b.scaler.max);
    const auto c = binarize(train, {{0, 0}});
    const auto d = binarize(train, {{100, -50}});
    EXPECT_EQ(c.binarizer.thresholds, d.binarizer.thresholds);
}
