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

#include "offslice/polygon.h"

#include <algorithm>

namespace offslice {

const char* ToString(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::kBase:
      return "base";
    case PrimitiveKind::kSphere:
      return "sphere";
    case PrimitiveKind::kCylinder:
      return "cylinder";
    case PrimitiveKind::kPrism:
      return "prism";
    case PrimitiveKind::kConeCapsule:
      return "cone-capsule";
    case PrimitiveKind::kFinal:
      return "final";
  }
  return "unknown";
}

double SignedArea(std::span<const Vec2> points) {
  const std::size_t n = points.size();
  if (n < 3) return 0;
  // Shoelace about the first point to limit cancellation.
  const Vec2 o = points[0];
  double twice = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(points[i] - o, points[i + 1] - o);
  return 0.5 * twice;
}

double Perimeter(std::span<const Vec2> points) {
  double total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += length(points[(i + 1) % points.size()] - points[i]);
  }
  return total;
}

void Contour::Reverse() {
  std::reverse(points.begin(), points.end());
  area = -area;
}

}  // namespace offslice
