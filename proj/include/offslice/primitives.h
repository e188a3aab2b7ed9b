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

#include <array>
#include <optional>

#include "offslice/mesh.h"
#include "offslice/polygon.h"

// Horizontal sections of the pieces a dilated triangle decomposes into:
// vertex spheres, edge cylinders (or conical capsules when the radius varies)
// and the center prism. Every section is convex and emitted counter-clockwise
// with its vertices on the true section curve, so the polygon lies inside the
// exact section by at most the chord tolerance.

namespace offslice {

/// Sections whose inscribed-circle radius falls below this emit nothing.
inline constexpr double kMinCutRadius = 1e-6;
/// Below this |sin| of the axis inclination, cylinders use the strip form.
inline constexpr double kNearHorizontalSin = 1e-4;
/// Minimum segment count of a closed tessellated curve.
inline constexpr int kMinCurveSegments = 8;

class ChordTolerance {
 public:
  /// Throws InputError unless epsilon > 0.
  explicit ChordTolerance(double epsilon);
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

/// n = max(8, ceil(pi / acos(1 - eps / radius))); 8 when eps >= radius.
int CircleSegmentCount(double radius, ChordTolerance eps);

/// Regular inscribed n-gon, first vertex at angle 0, counter-clockwise.
Contour TessellateCircle(Vec2 center, double radius, ChordTolerance eps);

std::optional<Contour> SliceSphere(Point3 center, double radius, double z, ChordTolerance eps);

/// Finite cylinder of the given radius around p0p1, capped by the planes
/// through p0 and p1 perpendicular to the axis. Throws GeometryError when
/// p0 == p1.
std::optional<Contour> SliceCappedCylinder(Point3 p0, Point3 p1, double radius, double z,
                                           ChordTolerance eps);

/// Vertices of a (possibly sloped) prism: [0..2] = tri[i] + r[i]*n,
/// [3..5] = tri[i] - r[i]*n, with n the unit normal. Throws GeometryError for a
/// degenerate triangle.
std::array<Point3, 6> PrismVertices(const std::array<Point3, 3>& tri,
                                    const std::array<double, 3>& radii);

/// Section of the polytope with prism topology (top triangle 0,1,2, bottom
/// triangle 3,4,5, lateral edges i -> i+3). A vertex exactly at z counts as
/// above the plane. Throws GeometryError on non-finite input or when the
/// section is not convex.
std::optional<Contour> SliceConvexPolytope(const std::array<Point3, 6>& vertices, double z);

/// Section of the convex hull of the balls B(p0, r0) and B(p1, r1).
std::optional<Contour> SliceConicalCapsule(Point3 p0, double r0, Point3 p1, double r1, double z,
                                           ChordTolerance eps);

/// Section of a mesh triangle, oriented with the solid on its left. Empty when
/// the triangle lies entirely on one side, is coplanar with the plane, or the
/// section collapses to a single crossing.
std::optional<Segment2> SliceTriangle(const Triangle& tri, const IndexedMesh& mesh, double z);

}  // namespace offslice
