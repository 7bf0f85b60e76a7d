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

#include "qknn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "qknn/errors.hpp"
#include "qknn/random.hpp"

namespace qknn::data {

const std::array<const char*, kMeanFeatureCount> kMeanFeatureNames = {
    "radius_mean",     "texture_mean",   "perimeter_mean",      "area_mean",     "smoothness_mean",
    "compactness_mean", "concavity_mean", "concave_points_mean", "symmetry_mean", "fractal_dimension_mean",
};

namespace {

constexpr std::size_t kWdbcColumns = 2 + kWdbcFeatureCount;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool is_missing(std::string_view token) {
    if (token.empty() || token == "?") return true;
    std::string lower(token);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return lower == "na" || lower == "nan" || lower == "null";
}

std::optional<double> parse_number(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

bool looks_like_header(const std::vector<std::string_view>& fields) {
    if (fields.size() < 3) return false;
    const auto third = fields[2];
    return !is_missing(third) && !parse_number(third);
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        hash ^= (value >> (8 * i)) & 0xFFU;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void check_rows(const std::vector<FeatureVector>& rows, std::size_t dim, const char* what) {
    for (const auto& r : rows) {
        if (r.size() != dim) throw DomainError(std::string(what) + ": ragged feature vectors");
    }
}

}  // namespace

LoadResult parse_csv(std::istream& in) {
    LoadResult result;
    auto& report = result.report;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (first) {
            first = false;
            if (looks_like_header(fields)) {
                report.header_detected = true;
                continue;
            }
        }
        ++report.rows_read;

        const char* reason = nullptr;
        RawRecord record;
        if (fields.size() != kWdbcColumns) {
            reason = "field_count";
        } else if (fields[1] != "M" && fields[1] != "B") {
            reason = "bad_diagnosis";
        } else {
            record.id = std::string(fields[0]);
            record.diagnosis = fields[1].front();
            for (std::size_t i = 0; i < kWdbcFeatureCount && !reason; ++i) {
                const auto token = fields[2 + i];
                if (is_missing(token)) {
                    reason = "missing_value";
                } else if (auto value = parse_number(token); !value) {
                    reason = "unparsable_number";
                } else if (!std::isfinite(*value)) {
                    reason = "non_finite";
                } else {
                    record.features[i] = *value;
                }
            }
        }
        if (reason) {
            ++report.rows_dropped;
            ++report.drop_reasons[reason];
            continue;
        }
        result.records.push_back(std::move(record));
        ++report.rows_kept;
    }
    if (result.records.empty()) throw DataError("no valid rows in input");
    return result;
}

LoadResult load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_csv(in);
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.feature_names = feature_names;
    out.x.reserve(indices.size());
    out.y.reserve(indices.size());
    for (auto i : indices) {
        out.x.push_back(x.at(i));
        out.y.push_back(y.at(i));
    }
    return out;
}

Dataset select_mean_features(const std::vector<RawRecord>& records) {
    if (records.empty()) throw DataError("no records to select features from");
    Dataset ds;
    ds.feature_names.assign(kMeanFeatureNames.begin(), kMeanFeatureNames.end());
    ds.x.reserve(records.size());
    ds.y.reserve(records.size());
    for (const auto& r : records) {
        ds.x.emplace_back(r.features.begin(), r.features.begin() + kMeanFeatureCount);
        ds.y.push_back(r.diagnosis == 'M' ? kMalignant : kBenign);
    }
    return ds;
}

void SplitSpec::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw DomainError("split fraction must lie in (0, 1)");
}

Split split(const Dataset& dataset, const SplitSpec& spec) {
    spec.validate();
    const std::size_t n = dataset.size();
    if (n < 2 || dataset.y.size() != n) throw DomainError("split: need at least two labeled rows");

    std::map<unsigned, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[dataset.y[i]].push_back(i);

    Rng rng(spec.seed);
    for (auto& [label, rows] : by_class) {
        for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[uniform_below(rng, i)]);
    }

    // Per-class quotas by largest remainder so they sum to round(fraction * N).
    const auto train_total = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
    std::vector<std::pair<unsigned, double>> remainders;
    std::map<unsigned, std::size_t> quota;
    std::size_t assigned = 0;
    for (const auto& [label, rows] : by_class) {
        const double exact = spec.train_fraction * static_cast<double>(rows.size());
        quota[label] = static_cast<std::size_t>(std::floor(exact));
        assigned += quota[label];
        remainders.emplace_back(label, exact - std::floor(exact));
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; assigned < train_total && i < remainders.size(); ++i, ++assigned) {
        ++quota[remainders[i].first];
    }

    Split out;
    for (const auto& [label, rows] : by_class) {
        const std::size_t q = std::min(quota[label], rows.size());
        out.train_indices.insert(out.train_indices.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(q));
        out.test_indices.insert(out.test_indices.end(), rows.begin() + static_cast<std::ptrdiff_t>(q), rows.end());
    }
    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.test_indices.begin(), out.test_indices.end());
    if (out.train_indices.empty() || out.test_indices.empty()) throw DomainError("split leaves an empty partition");

    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (auto i : out.train_indices) hash = fnv1a(hash, i);
    hash = fnv1a(hash, ~0ULL);
    for (auto i : out.test_indices) hash = fnv1a(hash, i);
    out.hash = hash;
    out.train = dataset.subset(out.train_indices);
    out.test = dataset.subset(out.test_indices);
    return out;
}

MinMaxScaler MinMaxScaler::fit(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw DomainError("min-max: empty training set");
    const std::size_t dim = train.front().size();
    check_rows(train, dim, "min-max");
    MinMaxScaler s;
    s.min = train.front();
    s.max = train.front();
    for (const auto& row : train) {
        for (std::size_t j = 0; j < dim; ++j) {
            s.min[j] = std::min(s.min[j], row[j]);
            s.max[j] = std::max(s.max[j], row[j]);
        }
    }
    return s;
}

FeatureVector MinMaxScaler::transform(const FeatureVector& x) const {
    if (x.size() != min.size()) throw DomainError("min-max: dimension mismatch");
    FeatureVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double range = max[j] - min[j];
        out[j] = range > 0.0 ? std::clamp((x[j] - min[j]) / range, 0.0, 1.0) : 0.0;
    }
    return out;
}

std::vector<FeatureVector> MinMaxScaler::transform(const std::vector<FeatureVector>& xs) const {
    std::vector<FeatureVector> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(transform(x));
    return out;
}

Normalized min_max_normalize(const std::vector<FeatureVector>& train, const std::vector<FeatureVector>& test) {
    Normalized out;
    out.scaler = MinMaxScaler::fit(train);
    out.train = out.scaler.transform(train);
    out.test = out.scaler.transform(test);
    return out;
}

MedianBinarizer MedianBinarizer::fit(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw DomainError("binarize: empty training set");
    const std::size_t dim = train.front().size();
    check_rows(train, dim, "binarize");
    MedianBinarizer b;
    b.thresholds.resize(dim);
    std::vector<double> column(train.size());
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < train.size(); ++i) column[i] = train[i][j];
        b.thresholds[j] = median_of(column);
    }
    return b;
}

BitVector MedianBinarizer::transform(const FeatureVector& x) const {
    if (x.size() != thresholds.size()) throw DomainError("binarize: dimension mismatch");
    std::vector<std::uint8_t> bits(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) bits[j] = x[j] > thresholds[j] ? 1 : 0;
    return BitVector(std::move(bits));
}

std::vector<BitVector> MedianBinarizer::transform(const std::vector<FeatureVector>& xs) const {
    std::vector<BitVector> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(transform(x));
    return out;
}

Binarized binarize(const std::vector<FeatureVector>& train, const std::vector<FeatureVector>& test) {
    Binarized out;
    out.binarizer = MedianBinarizer::fit(train);
    out.train = out.binarizer.transform(train);
    out.test = out.binarizer.transform(test);
    return out;
}

}  // namespace qknn::data
