// Copyright 2026 The planarflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace planarflow {

// Darts of arc a are 2a (same orientation) and 2a + 1 (reverse).
using DartId = std::int32_t;
using ArcId = std::int32_t;
using NodeId = std::int32_t;
using FaceId = std::int32_t;
using Weight = std::int64_t;

inline constexpr std::int32_t kNone = -1;
inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::max() / 4;

/// Per-dart integer values: lengths, capacities and flow assignments share
/// this representation.
using DartValues = std::vector<Weight>;

constexpr DartId rev(DartId d) { return d ^ 1; }
constexpr ArcId arc_of(DartId d) { return d >> 1; }

/// Thrown for malformed input or violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the solver detects a broken internal invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in dart arithmetic");
  return r;
}

inline Weight checked_sub(Weight a, Weight b) {
  Weight r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in dart arithmetic");
  return r;
}

}  // namespace planarflow
