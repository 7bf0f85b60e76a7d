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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qknn {

/// Fixed-length pattern of {0,1} features. Element i is feature i; the string
/// form lists feature 0 first.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::vector<std::uint8_t> bits);
    static BitVector from_string(std::string_view text);
    static BitVector from_integer(std::uint64_t value, std::size_t length);

    [[nodiscard]] std::size_t size() const { return bits_.size(); }
    [[nodiscard]] bool empty() const { return bits_.empty(); }
    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    [[nodiscard]] const std::vector<std::uint8_t>& bits() const { return bits_; }
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const BitVector&, const BitVector&) = default;

   private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace qknn
