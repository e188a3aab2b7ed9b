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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "offslice/geometry.h"

namespace offslice {

inline constexpr std::uint32_t kNoIndex = 0xffffffffu;

/// Oriented triangle over the welded vertex table. Counter-clockwise vertex
/// order seen from outside marks an outside-to-inside interface.
struct Triangle {
  std::array<std::uint32_t, 3> v{};
  /// Ordinal position in the input file; the global sort key.
  std::uint32_t id = 0;
  /// Zero area under exact coordinate comparison. Degenerate triangles keep
  /// their vertex spheres, edge cylinders and base-slice segments (their
  /// segments close the chains of the neighbors) but have no prism.
  bool degenerate = false;
};

/// Undirected edge, a < b.
struct Edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::vector<std::uint32_t> triangles;
  /// Lowest incident triangle id; that triangle emits the edge primitive.
  std::uint32_t owner = kNoIndex;
};

struct ZInterval {
  double z_min = 0;
  double z_max = 0;
};

struct Box3 {
  Point3 min;
  Point3 max;
};

using TriangleSoup = std::vector<std::array<Point3, 3>>;

/// Welded triangle mesh. Immutable once built, so it can be shared freely
/// between worker threads.
class IndexedMesh {
 public:
  IndexedMesh() = default;

  /// Welds vertices by exact bit equality of their coordinates (-0 and +0 are
  /// the same coordinate). Triangle ids follow soup order.
  static IndexedMesh FromSoup(const TriangleSoup& soup);

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge indices of each triangle, for the edges (v0,v1), (v1,v2), (v2,v0).
  /// kNoIndex where two corners share a vertex.
  const std::array<std::uint32_t, 3>& triangle_edges(std::uint32_t tri) const {
    return triangle_edges_[tri];
  }
  /// Lowest id of the triangles using vertex v.
  std::uint32_t vertex_owner(std::uint32_t v) const { return vertex_owner_[v]; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_degenerate() const;
  bool empty() const { return triangles_.empty(); }

  TriangleSoup ToSoup() const;

 private:
  std::vector<Point3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<std::uint32_t, 3>> triangle_edges_;
  std::vector<std::uint32_t> vertex_owner_;
};

/// Parses binary or ASCII STL, auto-detected. Binary wins whenever the byte
/// count matches the declared facet count exactly. Throws InputError on a
/// truncated binary body, an ASCII syntax error, non-finite coordinates or
/// zero facets.
IndexedMesh LoadStl(std::span<const std::byte> bytes);
IndexedMesh LoadStlFile(const std::filesystem::path& path);

std::vector<std::byte> WriteStlBinary(const TriangleSoup& soup);
std::string WriteStlAscii(const TriangleSoup& soup, const std::string& name = "offslice");

ZInterval TriangleZInterval(const Triangle& tri, const IndexedMesh& mesh);

/// Throws InputError for an empty mesh.
Box3 MeshBounds(const IndexedMesh& mesh);

}  // namespace offslice
