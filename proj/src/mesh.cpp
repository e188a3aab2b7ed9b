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

#include "offslice/mesh.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

namespace offslice {

namespace {

struct VertexKey {
  std::uint64_t x, y, z;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = k.x * 0x9e3779b97f4a7c15ull;
    h ^= k.y + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
    h ^= k.z + 0x94d049bb133111ebull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t CoordBits(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into +0
  return std::bit_cast<std::uint64_t>(v);
}

VertexKey KeyOf(const Point3& p) {
  return {CoordBits(p.x), CoordBits(p.y), CoordBits(p.z)};
}

Point3 Canonical(Point3 p) {
  if (p.x == 0.0) p.x = 0.0;
  if (p.y == 0.0) p.y = 0.0;
  if (p.z == 0.0) p.z = 0.0;
  return p;
}

std::uint64_t EdgeKey(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

template <typename T>
T ReadLE(const std::byte* p) {
  T value;
  std::memcpy(&value, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    auto raw = std::bit_cast<std::array<std::byte, sizeof(T)>>(value);
    std::reverse(raw.begin(), raw.end());
    value = std::bit_cast<T>(raw);
  }
  return value;
}

template <typename T>
void WriteLE(std::vector<std::byte>& out, T value) {
  auto raw = std::bit_cast<std::array<std::byte, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(raw.begin(), raw.end());
  }
  out.insert(out.end(), raw.begin(), raw.end());
}

TriangleSoup ParseBinary(std::span<const std::byte> bytes) {
  if (bytes.size() < 84) throw InputError("truncated body: missing STL header");
  const auto count = ReadLE<std::uint32_t>(bytes.data() + 80);
  const std::size_t needed = 84 + std::size_t{count} * 50;
  if (bytes.size() < needed) {
    throw InputError("truncated body: header declares " + std::to_string(count) +
                     " facets but only " + std::to_string((bytes.size() - 84) / 50) +
                     " complete records are present");
  }
  TriangleSoup soup(count);
  const std::byte* rec = bytes.data() + 84;
  for (std::uint32_t i = 0; i < count; ++i, rec += 50) {
    // 12 bytes of normal are skipped; orientation comes from vertex order.
    for (int k = 0; k < 3; ++k) {
      const std::byte* p = rec + 12 + 12 * k;
      soup[i][k] = {ReadLE<float>(p), ReadLE<float>(p + 4), ReadLE<float>(p + 8)};
    }
  }
  return soup;
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::string_view Next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void SkipLine() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  int line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

bool KeywordIs(std::string_view token, std::string_view keyword) {
  return token.size() == keyword.size() &&
         std::equal(token.begin(), token.end(), keyword.begin(), [](char a, char b) {
           return std::tolower(static_cast<unsigned char>(a)) == b;
         });
}

TriangleSoup ParseAscii(std::string_view text) {
  Tokenizer tok(text);
  auto fail = [&](const std::string& what) -> InputError {
    return InputError("ASCII STL parse error at line " + std::to_string(tok.line()) + ": " + what);
  };
  auto expect = [&](std::string_view keyword) {
    const auto t = tok.Next();
    if (!KeywordIs(t, keyword)) {
      throw fail("expected '" + std::string(keyword) + "', found '" + std::string(t) + "'");
    }
  };
  auto number = [&]() {
    const auto t = tok.Next();
    double v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw fail("bad number '" + std::string(t) + "'");
    }
    return v;
  };

  TriangleSoup soup;
  auto t = tok.Next();
  if (!KeywordIs(t, "solid")) throw fail("missing 'solid'");
  tok.SkipLine();
  while (true) {
    t = tok.Next();
    if (t.empty()) throw fail("unexpected end of file, missing 'endsolid'");
    if (KeywordIs(t, "endsolid")) {
      tok.SkipLine();
      t = tok.Next();
      if (t.empty()) break;
      if (!KeywordIs(t, "solid")) throw fail("trailing content after 'endsolid'");
      tok.SkipLine();
      continue;
    }
    if (!KeywordIs(t, "facet")) throw fail("expected 'facet', found '" + std::string(t) + "'");
    expect("normal");
    number();
    number();
    number();
    expect("outer");
    expect("loop");
    std::array<Point3, 3> tri;
    for (auto& p : tri) {
      expect("vertex");
      p.x = number();
      p.y = number();
      p.z = number();
    }
    expect("endloop");
    expect("endfacet");
    soup.push_back(tri);
  }
  return soup;
}

bool StartsWithSolid(std::span<const std::byte> bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
  static constexpr std::string_view kSolid = "solid";
  if (bytes.size() - i < kSolid.size()) return false;
  for (std::size_t k = 0; k < kSolid.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(bytes[i + k])) != kSolid[k]) return false;
  }
  return true;
}

}  // namespace

IndexedMesh IndexedMesh::FromSoup(const TriangleSoup& soup) {
  IndexedMesh mesh;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> weld;
  weld.reserve(soup.size() * 2);
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
  edge_index.reserve(soup.size() * 2);

  mesh.triangles_.reserve(soup.size());
  mesh.triangle_edges_.reserve(soup.size());
  for (std::size_t t = 0; t < soup.size(); ++t) {
    Triangle tri;
    tri.id = static_cast<std::uint32_t>(t);
    for (int k = 0; k < 3; ++k) {
      const Point3 p = Canonical(soup[t][k]);
      if (!is_finite(p)) {
        throw InputError("non-finite vertex coordinate in facet " + std::to_string(t));
      }
      auto [it, inserted] =
          weld.try_emplace(KeyOf(p), static_cast<std::uint32_t>(mesh.vertices_.size()));
      if (inserted) {
        mesh.vertices_.push_back(p);
        mesh.vertex_owner_.push_back(tri.id);
      }
      tri.v[k] = it->second;
    }
    const Point3& a = mesh.vertices_[tri.v[0]];
    const Point3& b = mesh.vertices_[tri.v[1]];
    const Point3& c = mesh.vertices_[tri.v[2]];
    const Point3 n = cross(b - a, c - a);
    tri.degenerate = tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[2] == tri.v[0] ||
                     (n.x == 0 && n.y == 0 && n.z == 0);

    std::array<std::uint32_t, 3> tri_edges{kNoIndex, kNoIndex, kNoIndex};
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t u = tri.v[k];
      const std::uint32_t w = tri.v[(k + 1) % 3];
      if (u == w) continue;
      auto [it, inserted] =
          edge_index.try_emplace(EdgeKey(u, w), static_cast<std::uint32_t>(mesh.edges_.size()));
      if (inserted) {
        Edge e;
        e.a = std::min(u, w);
        e.b = std::max(u, w);
        e.owner = tri.id;
        mesh.edges_.push_back(std::move(e));
      }
      Edge& e = mesh.edges_[it->second];
      if (e.triangles.empty() || e.triangles.back() != tri.id) e.triangles.push_back(tri.id);
      tri_edges[k] = it->second;
    }
    mesh.triangle_edges_.push_back(tri_edges);
    mesh.triangles_.push_back(tri);
  }
  return mesh;
}

std::size_t IndexedMesh::num_degenerate() const {
  return static_cast<std::size_t>(
      std::count_if(triangles_.begin(), triangles_.end(), [](const Triangle& t) { return t.degenerate; }));
}

TriangleSoup IndexedMesh::ToSoup() const {
  TriangleSoup soup;
  soup.reserve(triangles_.size());
  for (const Triangle& t : triangles_) {
    soup.push_back({vertices_[t.v[0]], vertices_[t.v[1]], vertices_[t.v[2]]});
  }
  return soup;
}

IndexedMesh LoadStl(std::span<const std::byte> bytes) {
  TriangleSoup soup;
  bool binary = true;
  if (bytes.size() >= 84) {
    const auto count = ReadLE<std::uint32_t>(bytes.data() + 80);
    const bool exact_size = bytes.size() == 84 + std::size_t{count} * 50;
    binary = exact_size || !StartsWithSolid(bytes);
  } else {
    binary = !StartsWithSolid(bytes);
  }
  if (binary) {
    soup = ParseBinary(bytes);
  } else {
    soup = ParseAscii(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
  if (soup.empty()) throw InputError("STL contains zero triangles");
  return IndexedMesh::FromSoup(soup);
}

IndexedMesh LoadStlFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return LoadStl(std::as_bytes(std::span(raw)));
}

std::vector<std::byte> WriteStlBinary(const TriangleSoup& soup) {
  std::vector<std::byte> out(80, std::byte{0});
  const char banner[] = "offslice binary stl";
  std::memcpy(out.data(), banner, sizeof(banner) - 1);
  out.reserve(84 + soup.size() * 50);
  WriteLE(out, static_cast<std::uint32_t>(soup.size()));
  for (const auto& tri : soup) {
    Point3 n = cross(tri[1] - tri[0], tri[2] - tri[0]);
    const double len = length(n);
    if (len > 0) n = n * (1.0 / len);
    for (double c : {n.x, n.y, n.z}) WriteLE(out, static_cast<float>(c));
    for (const Point3& p : tri) {
      for (double c : {p.x, p.y, p.z}) WriteLE(out, static_cast<float>(c));
    }
    WriteLE(out, std::uint16_t{0});
  }
  return out;
}

std::string WriteStlAscii(const TriangleSoup& soup, const std::string& name) {
  std::ostringstream os;
  os.precision(17);
  os << "solid " << name << "\n";
  for (const auto& tri : soup) {
    os << "  facet normal 0 0 0\n    outer loop\n";
    for (const Point3& p : tri) os << "      vertex " << p.x << ' ' << p.y << ' ' << p.z << "\n";
    os << "    endloop\n  endfacet\n";
  }
  os << "endsolid " << name << "\n";
  return os.str();
}

ZInterval TriangleZInterval(const Triangle& tri, const IndexedMesh& mesh) {
  const auto& v = mesh.vertices();
  const double a = v[tri.v[0]].z;
  const double b = v[tri.v[1]].z;
  const double c = v[tri.v[2]].z;
  return {std::min({a, b, c}), std::max({a, b, c})};
}

Box3 MeshBounds(const IndexedMesh& mesh) {
  if (mesh.vertices().empty()) throw InputError("bounds of an empty mesh");
  Box3 box{mesh.vertices().front(), mesh.vertices().front()};
  for (const Point3& p : mesh.vertices()) {
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
  }
  return box;
}

}  // namespace offslice
