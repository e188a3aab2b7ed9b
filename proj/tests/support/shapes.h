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

#include "offslice/mesh.h"

// Closed test meshes, outward facing (counter-clockwise seen from outside).

namespace offslice::testing {

TriangleSoup CubeSoup(Point3 min = {0, 0, 0}, double size = 1);
TriangleSoup TetrahedronSoup();
/// Subdivided icosahedron with vertices on the sphere of radius `radius`.
TriangleSoup IcosphereSoup(int subdivisions, double radius = 1);
/// Torus around the z axis; 2 * major_steps * minor_steps triangles.
TriangleSoup TorusSoup(double major, double minor, int major_steps, int minor_steps);

inline IndexedMesh Cube(Point3 min = {0, 0, 0}, double size = 1) {
  return IndexedMesh::FromSoup(CubeSoup(min, size));
}
inline IndexedMesh Icosphere(int subdivisions, double radius = 1) {
  return IndexedMesh::FromSoup(IcosphereSoup(subdivisions, radius));
}

}  // namespace offslice::testing
