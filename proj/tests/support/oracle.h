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
#include <vector>

#include "offslice/contour.h"
#include "offslice/mesh.h"

// Brute-force references: slow, obviously correct.

namespace offslice::testing {

double PointTriangleDistance(Point3 p, const std::array<Point3, 3>& tri);
double PointSegmentDistance(Point3 p, Point3 a, Point3 b);

/// Parity of crossings along a fixed skewed ray.
bool InsideSolid(Point3 p, const TriangleSoup& soup);

/// Distance to the boundary surface.
double SurfaceDistance(Point3 p, const TriangleSoup& soup);

/// Point of the dilation V + B_r.
bool InDilation(Point3 p, const TriangleSoup& soup, double r);
/// Point of the erosion: inside and at least r from the boundary.
bool InErosion(Point3 p, const TriangleSoup& soup, double r);

/// Inside the convex hull of B(p0, r0) and B(p1, r1). Sampled along the axis.
bool InConicalCapsule(Point3 p, Point3 p0, double r0, Point3 p1, double r1);

/// Winding number of point q with respect to the contours.
int WindingNumber(Vec2 q, const std::vector<Contour>& contours);

/// Grid of n x n pixels covering the square [lo, lo + side].
BitmapSpec SquareGrid(Vec2 lo, double side, int n);

/// Pixels set in `a` with no set pixel of `b` within `band_px` (Chebyshev).
std::size_t CountOutside(const Bitmap& a, const Bitmap& b, int band_px);

}  // namespace offslice::testing
