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

#include "qknn/bits.hpp"

#include "qknn/errors.hpp"

namespace qknn {

BitVector::BitVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw DomainError("bit vector elements must be 0 or 1");
    }
}

BitVector BitVector::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw DomainError("bit string may only contain '0' and '1'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitVector(std::move(bits));
}

BitVector BitVector::from_integer(std::uint64_t value, std::size_t length) {
    std::vector<std::uint8_t> bits(length);
    for (std::size_t i = 0; i < length; ++i) bits[i] = static_cast<std::uint8_t>((value >> i) & 1U);
    return BitVector(std::move(bits));
}

std::string BitVector::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
}

}  // namespace qknn
