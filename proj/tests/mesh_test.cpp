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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "offslice/mesh.h"
#include "support/shapes.h"

namespace offslice {
namespace {

std::vector<std::byte> Bytes(const std::string& s) {
  std::vector<std::byte> b(s.size());
  std::memcpy(b.data(), s.data(), s.size());
  return b;
}

TEST(LoadStl, BinaryCube) {
  const auto bytes = WriteStlBinary(testing::CubeSoup());
  ASSERT_EQ(bytes.size(), 84u + 50u * 12u);
  const IndexedMesh m = LoadStl(bytes);
  EXPECT_EQ(m.num_triangles(), 12u);
  EXPECT_EQ(m.num_vertices(), 8u);
  EXPECT_EQ(m.num_edges(), 18u);
  EXPECT_EQ(m.num_degenerate(), 0u);
  for (std::uint32_t i = 0; i < 12; ++i) EXPECT_EQ(m.triangles()[i].id, i);
}

TEST(LoadStl, AsciiOneFacet) {
  const std::string text =
      "solid t\n"
      " FACET normal 0 0 1\n"
      "  outer loop\n"
      "   vertex 0 0 0\n"
      "   vertex 1 0 0\n"
      "   VERTEX 0 1 0\n"
      "  endloop\n"
      " endfacet\n"
      "endsolid t\n";
  const IndexedMesh m = LoadStl(Bytes(text));
  EXPECT_EQ(m.num_triangles(), 1u);
  EXPECT_EQ(m.num_vertices(), 3u);
  EXPECT_EQ(m.num_edges(), 3u);
}

TEST(LoadStl, AsciiRoundTrip) {
  const auto soup = testing::IcosphereSoup(1);
  const IndexedMesh m = LoadStl(Bytes(WriteStlAscii(soup)));
  EXPECT_EQ(m.num_triangles(), soup.size());
  EXPECT_EQ(m.num_edges(), 3 * soup.size() / 2);
}

TEST(LoadStl, TruncatedBinary) {
  auto bytes = WriteStlBinary(testing::CubeSoup());
  // Declare 10 facets, keep 9 records.
  const std::uint32_t ten = 10;
  std::memcpy(bytes.data() + 80, &ten, 4);
  bytes.resize(84 + 50 * 9);
  try {
    LoadStl(bytes);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("truncated body"), std::string::npos) << e.what();
  }
}

TEST(LoadStl, AsciiParseErrorHasLine) {
  const std::string text = "solid t\nfacet normal 0 0 1\nouter loop\nvertex 0 0 x\n";
  try {
    LoadStl(Bytes(text));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(LoadStl, ZeroTriangles) {
  EXPECT_THROW(LoadStl(WriteStlBinary({})), InputError);
  EXPECT_THROW(LoadStl(Bytes("solid e\nendsolid e\n")), InputError);
}

TEST(LoadStl, NonFiniteRejected) {
  TriangleSoup soup = {{Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, NAN, 0}}};
  EXPECT_THROW(LoadStl(WriteStlBinary(soup)), InputError);
}

TEST(IndexedMesh, WeldIsExactAndFoldsNegativeZero) {
  TriangleSoup soup = {{Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}},
                       {Point3{-0.0, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}},
                       {Point3{1e-12, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}}};
  const IndexedMesh m = IndexedMesh::FromSoup(soup);
  // -0 welds with +0, 1e-12 stays separate.
  EXPECT_EQ(m.num_vertices(), 5u);
}

TEST(IndexedMesh, DegenerateFlaggedAndKept) {
  TriangleSoup soup = {{Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{2, 0, 0}},
                       {Point3{0, 0, 0}, Point3{0, 0, 0}, Point3{0, 1, 0}},
                       {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}}};
  const IndexedMesh m = IndexedMesh::FromSoup(soup);
  ASSERT_EQ(m.num_triangles(), 3u);
  EXPECT_TRUE(m.triangles()[0].degenerate);
  EXPECT_TRUE(m.triangles()[1].degenerate);
  EXPECT_FALSE(m.triangles()[2].degenerate);
  EXPECT_EQ(m.num_degenerate(), 2u);
  // The repeated corner has no edge of its own.
  EXPECT_EQ(m.triangle_edges(1)[0], kNoIndex);
}

TEST(IndexedMesh, EdgeTableAndOwnership) {
  const IndexedMesh m = testing::Cube();
  for (const Edge& e : m.edges()) {
    EXPECT_LT(e.a, e.b);
    ASSERT_EQ(e.triangles.size(), 2u);
    EXPECT_EQ(e.owner, *std::min_element(e.triangles.begin(), e.triangles.end()));
  }
  for (const Triangle& t : m.triangles()) {
    for (std::uint32_t e : m.triangle_edges(t.id)) {
      ASSERT_NE(e, kNoIndex);
      const auto& tris = m.edges()[e].triangles;
      EXPECT_NE(std::find(tris.begin(), tris.end(), t.id), tris.end());
    }
  }
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
    std::uint32_t lowest = kNoIndex;
    for (const Triangle& t : m.triangles()) {
      if (std::find(t.v.begin(), t.v.end(), v) != t.v.end()) lowest = std::min(lowest, t.id);
    }
    EXPECT_EQ(m.vertex_owner(v), lowest);
  }
}

TEST(IndexedMesh, WeldingIdempotent) {
  const IndexedMesh a = testing::Icosphere(2);
  const IndexedMesh b = IndexedMesh::FromSoup(a.ToSoup());
  const IndexedMesh c = LoadStl(WriteStlBinary(b.ToSoup()));
  EXPECT_EQ(a.num_vertices(), c.num_vertices());
  EXPECT_EQ(a.num_edges(), c.num_edges());
  EXPECT_EQ(a.num_triangles(), c.num_triangles());
}

TEST(IndexedMesh, WatertightEdgeCount) {
  for (const auto& soup : {testing::CubeSoup(), testing::TetrahedronSoup(),
                           testing::IcosphereSoup(3), testing::TorusSoup(3, 1, 12, 8)}) {
    const IndexedMesh m = IndexedMesh::FromSoup(soup);
    EXPECT_EQ(2 * m.num_edges(), 3 * m.num_triangles());
  }
}

TEST(TriangleZInterval, Examples) {
  TriangleSoup soup = {{Point3{0, 0, 0}, Point3{1, 0, 1}, Point3{0, 1, 2}},
                       {Point3{0, 0, 1}, Point3{1, 0, 1}, Point3{0, 1, 1}},
                       {Point3{0, 0, -0.5}, Point3{1, 0, -0.5}, Point3{0, 1, 3}}};
  const IndexedMesh m = IndexedMesh::FromSoup(soup);
  const ZInterval a = TriangleZInterval(m.triangles()[0], m);
  EXPECT_EQ(a.z_min, 0);
  EXPECT_EQ(a.z_max, 2);
  const ZInterval b = TriangleZInterval(m.triangles()[1], m);
  EXPECT_EQ(b.z_min, 1);
  EXPECT_EQ(b.z_max, 1);
  const ZInterval c = TriangleZInterval(m.triangles()[2], m);
  EXPECT_EQ(c.z_min, -0.5);
  EXPECT_EQ(c.z_max, 3);
}

TEST(MeshBounds, Examples) {
  Box3 b = MeshBounds(testing::Cube());
  EXPECT_EQ(b.min, (Point3{0, 0, 0}));
  EXPECT_EQ(b.max, (Point3{1, 1, 1}));
  b = MeshBounds(testing::Cube({5, 5, 5}));
  EXPECT_EQ(b.min, (Point3{5, 5, 5}));
  EXPECT_EQ(b.max, (Point3{6, 6, 6}));
  b = MeshBounds(IndexedMesh::FromSoup({{Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}}}));
  EXPECT_EQ(b.min, (Point3{0, 0, 0}));
  EXPECT_EQ(b.max, (Point3{1, 1, 0}));
  EXPECT_THROW(MeshBounds(IndexedMesh{}), InputError);
}

TEST(MeshBounds, ContainsTriangleIntervals) {
  const IndexedMesh m = testing::Icosphere(2, 3);
  const Box3 b = MeshBounds(m);
  for (const Triangle& t : m.triangles()) {
    const ZInterval z = TriangleZInterval(t, m);
    EXPECT_GE(z.z_min, b.min.z);
    EXPECT_LE(z.z_max, b.max.z);
  }
}

}  // namespace
}  // namespace offslice
