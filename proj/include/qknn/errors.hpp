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

#include <stdexcept>
#include <string>

namespace qknn {

// Invalid argument: bad qubit index, out-of-range basis state, mismatched sizes.
// Derives from std::domain_error so callers may catch either.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

// Request exceeds a size guard (e.g. a dense unitary for too many qubits).
class ResourceError : public std::length_error {
   public:
    using std::length_error::length_error;
};

// Input data is unreadable or contains no usable rows.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Post-selection on the threshold flag accepted nothing and fallback is off.
class NoNeighborError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Broken internal invariant (degenerate norm and the like).
class InternalError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace qknn
