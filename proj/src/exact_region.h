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

// Exact winding-number region extraction on a 1e-7 mm integer grid.
//
// Input coordinates are snapped to the grid once. Every edge, including the
// edges of intermediate results, lies on the supporting line of an original
// snapped segment, and every vertex is either a grid point or the
// intersection of two such lines. Vertices are therefore exact rationals with
// bounded size: with |coordinate| <= 2^36 the numerators fit in 113 bits and
// the denominators in 75, and every predicate reduces to the sign of a
// difference of two products of 128-bit integers.
//
// Because nothing is rounded between stages, the extracted region depends only
// on the point set {winding > 0} and not on how the input was batched, which
// is what makes progressive and divide-and-conquer accumulation produce
// byte-identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "offslice/geometry.h"

namespace offslice::exact {

using Int128 = __int128;

inline constexpr double kUnitsPerMm = 1e7;
inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 36;

/// Throws GeometryError when the snapped value exceeds kMaxCoordinate.
std::int64_t Snap(double mm);

/// Supporting line of an original snapped segment: p + t d.
struct Line {
  std::int64_t px = 0;
  std::int64_t py = 0;
  std::int64_t dx = 0;
  std::int64_t dy = 0;
};

/// (x / d, y / d) in grid units, d > 0, with double approximations used as
/// a filter before exact evaluation.
struct Point {
  Int128 x = 0;
  Int128 y = 0;
  Int128 d = 1;
  double ax = 0;
  double ay = 0;

  static Point Grid(std::int64_t x, std::int64_t y);
};

int SignProductDifference(Int128 a, Int128 b, Int128 c, Int128 d);

/// Intersection of two non-parallel lines.
Point Intersect(const Line& a, const Line& b);
int CompareX(const Point& p, const Point& q);
int CompareY(const Point& p, const Point& q);
/// Lexicographic by x, then y.
int CompareXY(const Point& p, const Point& q);
bool Equal(const Point& p, const Point& q);
/// Sign of cross(line.d, p - line.p); positive when p is left of the line.
int Orient(const Line& line, const Point& p);
/// Correctly placed conversion to millimeters: depends only on the rational
/// value, not on its representation.
Vec2 ToMillimeters(const Point& p);

struct Edge {
  Point a;
  Point b;
  Line line;
  /// a -> b runs along +line.d.
  bool forward = true;
  std::int32_t weight = 1;
  /// Id of the convex input polygon this edge belongs to, or -1.
  std::int32_t convex_group = -1;
};

struct Loop {
  std::vector<Point> points;
  /// lines[i] supports points[i] -> points[i + 1].
  std::vector<Line> lines;
  std::vector<bool> forward;
};

/// Boundary of {winding > 0}: counter-clockwise outer loops and clockwise
/// holes, mutually non-crossing, maximal collinear runs merged, each loop
/// starting at its lexicographically smallest vertex, loops sorted.
struct Region {
  std::vector<Loop> loops;
  bool empty() const { return loops.empty(); }
  bool operator==(const Region& other) const;
};

struct ExtractStats {
  std::size_t edges = 0;
  std::size_t candidate_pairs = 0;
  std::size_t exact_tests = 0;
  std::size_t vertices = 0;
  std::size_t components = 0;
};

/// Snaps a closed polyline and appends its edges. Zero-length edges after
/// snapping are dropped. When convex_group >= 0 the group id is kept only if
/// the snapped polygon is still strictly convex. Returns false when fewer
/// than three distinct points survive.
bool AppendPolygon(std::span<const Vec2> points_mm, std::int32_t weight,
                   std::int32_t convex_group, std::vector<Edge>& out);

void AppendRegion(const Region& region, std::int32_t weight, std::vector<Edge>& out);

/// Region of positive winding. With skip_convex_pairs, edge pairs of the same
/// convex polygon are not intersected; the result is identical because such
/// pairs only meet at shared vertices.
Region Extract(std::vector<Edge> edges, bool skip_convex_pairs = false,
               ExtractStats* stats = nullptr);

std::vector<Vec2> LoopToMillimeters(const Loop& loop);

}  // namespace offslice::exact
