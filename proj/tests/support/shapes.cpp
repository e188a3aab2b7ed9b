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

#include "shapes.h"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace offslice::testing {

TriangleSoup CubeSoup(Point3 min, double size) {
  auto c = [&](int x, int y, int z) {
    return Point3{min.x + x * size, min.y + y * size, min.z + z * size};
  };
  // Each face as a quad, counter-clockwise from outside.
  const int quads[6][4][3] = {
      {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}},  // -z
      {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},  // +z
      {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}},  // -y
      {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}},  // +y
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}},  // -x
      {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}},  // +x
  };
  TriangleSoup soup;
  for (const auto& q : quads) {
    const Point3 p0 = c(q[0][0], q[0][1], q[0][2]);
    const Point3 p1 = c(q[1][0], q[1][1], q[1][2]);
    const Point3 p2 = c(q[2][0], q[2][1], q[2][2]);
    const Point3 p3 = c(q[3][0], q[3][1], q[3][2]);
    soup.push_back({p0, p1, p2});
    soup.push_back({p0, p2, p3});
  }
  return soup;
}

TriangleSoup TetrahedronSoup() {
  const Point3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0}, d{0, 0, 1};
  return {{a, c, b}, {a, b, d}, {a, d, c}, {b, c, d}};
}

TriangleSoup IcosphereSoup(int subdivisions, double radius) {
  const double t = (1 + std::sqrt(5.0)) / 2;
  std::vector<Point3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                           {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                           {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  auto unit = [](Point3 p) { return p * (1 / length(p)); };
  for (Point3& p : v) p = unit(p);
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back(unit((v[a] + v[b]) * 0.5));
      const int id = static_cast<int>(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& tri : f) {
      const int ab = midpoint(tri[0], tri[1]);
      const int bc = midpoint(tri[1], tri[2]);
      const int ca = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  TriangleSoup soup;
  for (const auto& tri : f) soup.push_back({v[tri[0]] * radius, v[tri[1]] * radius, v[tri[2]] * radius});
  return soup;
}

TriangleSoup TorusSoup(double major, double minor, int major_steps, int minor_steps) {
  auto at = [&](int i, int j) {
    const double u = 2 * std::numbers::pi * (i % major_steps) / major_steps;
    const double w = 2 * std::numbers::pi * (j % minor_steps) / minor_steps;
    const double rr = major + minor * std::cos(w);
    return Point3{rr * std::cos(u), rr * std::sin(u), minor * std::sin(w)};
  };
  TriangleSoup soup;
  soup.reserve(static_cast<std::size_t>(2 * major_steps * minor_steps));
  for (int i = 0; i < major_steps; ++i) {
    for (int j = 0; j < minor_steps; ++j) {
      const Point3 a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
      soup.push_back({a, b, c});
      soup.push_back({a, c, d});
    }
  }
  return soup;
}

}  // namespace offslice::testing
