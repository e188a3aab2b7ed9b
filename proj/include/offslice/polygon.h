// Copyright 2026 The Offslice Authors.
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
#include <span>
#include <vector>

#include "offslice/geometry.h"

namespace offslice {

/// What produced a contour. The numeric order is part of the canonical
/// contour sort key.
enum class PrimitiveKind : std::uint8_t {
  kBase = 0,
  kSphere = 1,
  kCylinder = 2,
  kPrism = 3,
  kConeCapsule = 4,
  kFinal = 5,
};

const char* ToString(PrimitiveKind kind);

/// Source id of contours that do not come from a single dilated triangle.
inline constexpr std::int64_t kNoSource = -1;

double SignedArea(std::span<const Vec2> points);
double Perimeter(std::span<const Vec2> points);

/// Closed oriented polygon; the closing edge from back() to front() is
/// implicit. Positive area is counter-clockwise, i.e. solid on the left.
struct Contour {
  std::vector<Vec2> points;
  std::int64_t source = kNoSource;
  PrimitiveKind kind = PrimitiveKind::kFinal;
  double area = 0;

  Contour() = default;
  Contour(std::vector<Vec2> pts, std::int64_t src, PrimitiveKind k)
      : points(std::move(pts)), source(src), kind(k), area(SignedArea(points)) {}

  bool ccw() const { return area > 0; }
  void Reverse();
};

/// Endpoint identity of a base-slice segment: the crossed mesh edge (a < b),
/// or a mesh vertex lying exactly on the plane (a == b).
struct CrossingKey {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  auto operator<=>(const CrossingKey&) const = default;
};

/// Oriented section of one triangle by a slicing plane, with the solid on its
/// left.
struct Segment2 {
  Vec2 from;
  Vec2 to;
  CrossingKey from_key;
  CrossingKey to_key;
  std::int64_t source = kNoSource;
};

}  // namespace offslice
