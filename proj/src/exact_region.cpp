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

#include "exact_region.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace offslice::exact {

namespace {

using U128 = unsigned __int128;

struct U256 {
  U128 hi = 0;
  U128 lo = 0;
};

U256 Multiply(U128 a, U128 b) {
  constexpr U128 kMask = ~std::uint64_t{0};
  const U128 a0 = a & kMask, a1 = a >> 64;
  const U128 b0 = b & kMask, b1 = b >> 64;
  const U128 p00 = a0 * b0;
  const U128 p01 = a0 * b1;
  const U128 p10 = a1 * b0;
  const U128 p11 = a1 * b1;
  const U128 mid = (p00 >> 64) + (p01 & kMask) + (p10 & kMask);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (p00 & kMask) | (mid << 64)};
}

int Compare(const U256& a, const U256& b) {
  if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
  if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
  return 0;
}

int Sign(Int128 v) { return (v > 0) - (v < 0); }
U128 Magnitude(Int128 v) { return v < 0 ? U128(0) - U128(v) : U128(v); }

double Approx(Int128 num, Int128 den) {
  if (den == 1) return static_cast<double>(num);
  return static_cast<double>(num) / static_cast<double>(den);
}

/// Decides sign(a - b) from approximations with relative error below 4e-16,
/// or returns 2 when too close to call.
int FilteredCompare(double a, double b) {
  const double diff = a - b;
  const double bound = 1e-15 * (std::abs(a) + std::abs(b)) + 1e-300;
  if (diff > bound) return 1;
  if (diff < -bound) return -1;
  return 2;
}

Int128 Cross(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
  return Int128{ax} * by - Int128{ay} * bx;
}

/// Position of q relative to p along +line.d (sign).
int CompareAlong(const Line& line, const Point& p, const Point& q) {
  if (std::abs(line.dx) >= std::abs(line.dy)) {
    return CompareX(q, p) * (line.dx > 0 ? 1 : -1);
  }
  return CompareY(q, p) * (line.dy > 0 ? 1 : -1);
}

bool StrictlyInside(const Edge& e, const Point& q) {
  const int sa = CompareAlong(e.line, e.a, q);
  const int sb = CompareAlong(e.line, q, e.b);
  return sa != 0 && sa == sb;
}

struct Direction {
  std::int64_t dx = 0;
  std::int64_t dy = 0;
};

int HalfPlane(const Direction& d) { return (d.dy > 0 || (d.dy == 0 && d.dx > 0)) ? 0 : 1; }

/// Counter-clockwise angular order starting at +x.
bool AngleLess(const Direction& a, const Direction& b) {
  const int ha = HalfPlane(a);
  const int hb = HalfPlane(b);
  if (ha != hb) return ha < hb;
  return Cross(a.dx, a.dy, b.dx, b.dy) > 0;
}

Direction DirectionOf(const Line& line, bool forward) {
  return forward ? Direction{line.dx, line.dy} : Direction{-line.dx, -line.dy};
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t Find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void Join(std::uint32_t a, std::uint32_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Box {
  double x0, y0, x1, y1;
};

Box BoxOf(const Edge& e) {
  const double m = 1e-3 + 1e-13 * std::max({std::abs(e.a.ax), std::abs(e.a.ay), std::abs(e.b.ax),
                                            std::abs(e.b.ay)});
  return {std::min(e.a.ax, e.b.ax) - m, std::min(e.a.ay, e.b.ay) - m,
          std::max(e.a.ax, e.b.ax) + m, std::max(e.a.ay, e.b.ay) + m};
}

/// Uniform grid over edge boxes; each candidate pair is reported once, from
/// the cell holding the lower-left corner of the two boxes' overlap.
template <typename Visit>
void ForEachCandidatePair(const std::vector<Box>& boxes, Visit&& visit) {
  const std::size_t n = boxes.size();
  double minx = boxes[0].x0, miny = boxes[0].y0, maxx = boxes[0].x1, maxy = boxes[0].y1;
  double extent_sum = 0;
  for (const Box& b : boxes) {
    minx = std::min(minx, b.x0);
    miny = std::min(miny, b.y0);
    maxx = std::max(maxx, b.x1);
    maxy = std::max(maxy, b.y1);
    extent_sum += std::max(b.x1 - b.x0, b.y1 - b.y0);
  }
  const double width = maxx - minx;
  const double height = maxy - miny;
  double cell = std::max(extent_sum / static_cast<double>(n), 1e-9);
  const double max_cells = 4.0 * static_cast<double>(n) + 16;
  while ((std::ceil(width / cell) + 1) * (std::ceil(height / cell) + 1) > max_cells) cell *= 1.5;
  const int nx = std::max(1, static_cast<int>(std::ceil(width / cell)));
  const int ny = std::max(1, static_cast<int>(std::ceil(height / cell)));
  auto cell_x = [&](double x) {
    return std::clamp(static_cast<int>(std::floor((x - minx) / cell)), 0, nx - 1);
  };
  auto cell_y = [&](double y) {
    return std::clamp(static_cast<int>(std::floor((y - miny) / cell)), 0, ny - 1);
  };

  const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<std::uint32_t> start(cells + 1, 0);
  for (const Box& b : boxes) {
    for (int cy = cell_y(b.y0); cy <= cell_y(b.y1); ++cy) {
      for (int cx = cell_x(b.x0); cx <= cell_x(b.x1); ++cx) ++start[cy * nx + cx + 1];
    }
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> members(start.back());
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Box& b = boxes[i];
    for (int cy = cell_y(b.y0); cy <= cell_y(b.y1); ++cy) {
      for (int cx = cell_x(b.x0); cx <= cell_x(b.x1); ++cx) members[fill[cy * nx + cx]++] = i;
    }
  }
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const std::size_t c = static_cast<std::size_t>(cy) * nx + cx;
      for (std::uint32_t s = start[c]; s < start[c + 1]; ++s) {
        const Box& bi = boxes[members[s]];
        for (std::uint32_t t = s + 1; t < start[c + 1]; ++t) {
          const Box& bj = boxes[members[t]];
          if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
          if (cell_x(std::max(bi.x0, bj.x0)) != cx || cell_y(std::max(bi.y0, bj.y0)) != cy) continue;
          visit(members[s], members[t]);
        }
      }
    }
  }
}

struct Split {
  std::uint32_t edge;
  Point point;
};

/// Undirected arrangement edge u < v; weight counts crossings in the u -> v
/// direction.
struct ArrEdge {
  std::uint32_t u;
  std::uint32_t v;
  std::int64_t weight;
  Line line;
  bool forward;  // u -> v along +line.d
};

}  // namespace

std::int64_t Snap(double mm) {
  const double units = std::nearbyint(mm * kUnitsPerMm);
  if (!(std::abs(units) <= static_cast<double>(kMaxCoordinate))) {
    throw GeometryError("coordinate " + std::to_string(mm) + " mm is outside the supported range");
  }
  return static_cast<std::int64_t>(units);
}

Point Point::Grid(std::int64_t x, std::int64_t y) {
  Point p;
  p.x = x;
  p.y = y;
  p.d = 1;
  p.ax = static_cast<double>(x);
  p.ay = static_cast<double>(y);
  return p;
}

int SignProductDifference(Int128 a, Int128 b, Int128 c, Int128 d) {
  const int s1 = Sign(a) * Sign(b);
  const int s2 = Sign(c) * Sign(d);
  if (s1 != s2) return s1 > s2 ? 1 : -1;
  if (s1 == 0) return 0;
  const int cmp = Compare(Multiply(Magnitude(a), Magnitude(b)), Multiply(Magnitude(c), Magnitude(d)));
  return s1 > 0 ? cmp : -cmp;
}

Point Intersect(const Line& a, const Line& b) {
  Int128 den = Cross(a.dx, a.dy, b.dx, b.dy);
  if (den == 0) throw GeometryError("intersection of parallel lines");
  const Int128 t = Cross(b.px - a.px, b.py - a.py, b.dx, b.dy);
  Point p;
  p.x = Int128{a.px} * den + Int128{a.dx} * t;
  p.y = Int128{a.py} * den + Int128{a.dy} * t;
  if (den < 0) {
    p.x = -p.x;
    p.y = -p.y;
    den = -den;
  }
  p.d = den;
  if (p.x % den == 0 && p.y % den == 0) {
    p.x /= den;
    p.y /= den;
    p.d = 1;
  }
  p.ax = Approx(p.x, p.d);
  p.ay = Approx(p.y, p.d);
  return p;
}

int CompareX(const Point& p, const Point& q) {
  if (p.d == 1 && q.d == 1) return Sign(p.x - q.x);
  const int f = FilteredCompare(p.ax, q.ax);
  if (f != 2) return f;
  return SignProductDifference(p.x, q.d, q.x, p.d);
}

int CompareY(const Point& p, const Point& q) {
  if (p.d == 1 && q.d == 1) return Sign(p.y - q.y);
  const int f = FilteredCompare(p.ay, q.ay);
  if (f != 2) return f;
  return SignProductDifference(p.y, q.d, q.y, p.d);
}

int CompareXY(const Point& p, const Point& q) {
  const int c = CompareX(p, q);
  return c != 0 ? c : CompareY(p, q);
}

bool Equal(const Point& p, const Point& q) { return CompareX(p, q) == 0 && CompareY(p, q) == 0; }

int Orient(const Line& line, const Point& p) {
  if (p.d == 1) {
    return Sign(Int128{line.dx} * (p.y - line.py) - Int128{line.dy} * (p.x - line.px));
  }
  const double dx = static_cast<double>(line.dx);
  const double dy = static_cast<double>(line.dy);
  const double px = static_cast<double>(line.px);
  const double py = static_cast<double>(line.py);
  const double value = dx * (p.ay - py) - dy * (p.ax - px);
  const double bound =
      2e-15 * (std::abs(dx) * (std::abs(p.ay) + std::abs(py)) + std::abs(dy) * (std::abs(p.ax) + std::abs(px)));
  if (value > bound) return 1;
  if (value < -bound) return -1;
  return SignProductDifference(line.dx, p.y - Int128{line.py} * p.d, line.dy,
                               p.x - Int128{line.px} * p.d);
}

namespace {

double CanonicalUnits(Int128 num, Int128 den) {
  Int128 q = num / den;
  Int128 r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  const Int128 f = ((r << 40) + den / 2) / den;
  return static_cast<double>(q) + std::ldexp(static_cast<double>(f), -40);
}

double CanonicalMm(Int128 num, Int128 den) {
  const double v = CanonicalUnits(num, den) / kUnitsPerMm;
  return v == 0 ? 0.0 : v;
}

}  // namespace

Vec2 ToMillimeters(const Point& p) { return {CanonicalMm(p.x, p.d), CanonicalMm(p.y, p.d)}; }

bool Region::operator==(const Region& other) const {
  if (loops.size() != other.loops.size()) return false;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& a = loops[i].points;
    const auto& b = other.loops[i].points;
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!Equal(a[k], b[k])) return false;
    }
  }
  return true;
}

bool AppendPolygon(std::span<const Vec2> points_mm, std::int32_t weight,
                   std::int32_t convex_group, std::vector<Edge>& out) {
  std::vector<std::array<std::int64_t, 2>> pts;
  pts.reserve(points_mm.size());
  for (const Vec2& p : points_mm) {
    const std::array<std::int64_t, 2> g{Snap(p.x), Snap(p.y)};
    if (pts.empty() || pts.back() != g) pts.push_back(g);
  }
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  if (pts.size() < 3) return false;
  const std::size_t n = pts.size();

  if (convex_group >= 0) {
    // Strictly convex: every turn to the same side, and the direction in
    // lexicographic order flips exactly twice (one winding).
    int turn_sign = 0;
    int flips = 0;
    bool convex = true;
    auto lex_forward = [&](std::size_t i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % n];
      return b[0] > a[0] || (b[0] == a[0] && b[1] > a[1]);
    };
    for (std::size_t i = 0; i < n && convex; ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % n];
      const auto& c = pts[(i + 2) % n];
      const int s = Sign(Cross(b[0] - a[0], b[1] - a[1], c[0] - b[0], c[1] - b[1]));
      if (s == 0 || (turn_sign != 0 && s != turn_sign)) convex = false;
      turn_sign = s;
      if (lex_forward(i) != lex_forward((i + 1) % n)) ++flips;
    }
    if (!convex || flips != 2) convex_group = -1;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    Edge e;
    e.a = Point::Grid(a[0], a[1]);
    e.b = Point::Grid(b[0], b[1]);
    e.line = {a[0], a[1], b[0] - a[0], b[1] - a[1]};
    e.forward = true;
    e.weight = weight;
    e.convex_group = convex_group;
    out.push_back(e);
  }
  return true;
}

void AppendRegion(const Region& region, std::int32_t weight, std::vector<Edge>& out) {
  for (const Loop& loop : region.loops) {
    const std::size_t n = loop.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      Edge e;
      e.a = loop.points[i];
      e.b = loop.points[(i + 1) % n];
      e.line = loop.lines[i];
      e.forward = loop.forward[i];
      e.weight = weight;
      out.push_back(e);
    }
  }
}

std::vector<Vec2> LoopToMillimeters(const Loop& loop) {
  std::vector<Vec2> pts;
  pts.reserve(loop.points.size());
  for (const Point& p : loop.points) pts.push_back(ToMillimeters(p));
  return pts;
}

Region Extract(std::vector<Edge> edges, bool skip_convex_pairs, ExtractStats* stats) {
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0 || Equal(e.a, e.b); });
  ExtractStats local;
  ExtractStats& st = stats ? *stats : local;
  st = {};
  st.edges = edges.size();
  if (edges.empty()) return {};
  const std::size_t n = edges.size();

  // 1. Split points from all pairwise contacts.
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = BoxOf(edges[i]);
  std::vector<Split> splits;
  ForEachCandidatePair(boxes, [&](std::uint32_t i, std::uint32_t j) {
    const Edge& e = edges[i];
    const Edge& f = edges[j];
    ++st.candidate_pairs;
    if (skip_convex_pairs && e.convex_group >= 0 && e.convex_group == f.convex_group) return;
    ++st.exact_tests;
    const int o1 = Orient(e.line, f.a);
    const int o2 = Orient(e.line, f.b);
    if (o1 == o2 && o1 != 0) return;
    if (o1 == 0 && o2 == 0) {
      for (const Point* q : {&f.a, &f.b}) {
        if (StrictlyInside(e, *q)) splits.push_back({i, *q});
      }
      for (const Point* q : {&e.a, &e.b}) {
        if (StrictlyInside(f, *q)) splits.push_back({j, *q});
      }
      return;
    }
    const int o3 = Orient(f.line, e.a);
    const int o4 = Orient(f.line, e.b);
    if (o3 == o4) return;  // both nonzero here: f is not on e's line
    // Proper crossing or touching; the contact point lies on both segments.
    if (o1 == 0) {
      if (o3 != 0 && o4 != 0) splits.push_back({i, f.a});
      return;
    }
    if (o2 == 0) {
      if (o3 != 0 && o4 != 0) splits.push_back({i, f.b});
      return;
    }
    if (o3 == 0) {
      splits.push_back({j, e.a});
      return;
    }
    if (o4 == 0) {
      splits.push_back({j, e.b});
      return;
    }
    const Point p = Intersect(e.line, f.line);
    splits.push_back({i, p});
    splits.push_back({j, p});
  });
  std::stable_sort(splits.begin(), splits.end(),
                   [](const Split& a, const Split& b) { return a.edge < b.edge; });

  // 2. Chains of points along each edge.
  std::vector<Point> points;
  std::vector<std::uint32_t> chain_start(n + 1, 0);
  points.reserve(2 * n + splits.size());
  {
    std::size_t s = 0;
    std::vector<Point> inner;
    for (std::uint32_t i = 0; i < n; ++i) {
      const Edge& e = edges[i];
      inner.clear();
      for (; s < splits.size() && splits[s].edge == i; ++s) inner.push_back(splits[s].point);
      const int dir = e.forward ? 1 : -1;
      std::sort(inner.begin(), inner.end(), [&](const Point& p, const Point& q) {
        return dir * CompareAlong(e.line, p, q) > 0;
      });
      chain_start[i] = static_cast<std::uint32_t>(points.size());
      points.push_back(e.a);
      for (const Point& p : inner) {
        if (!Equal(p, points.back()) && !Equal(p, e.b)) points.push_back(p);
      }
      points.push_back(e.b);
    }
    chain_start[n] = static_cast<std::uint32_t>(points.size());
  }

  // 3. Vertex ids in lexicographic order.
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return CompareXY(points[a], points[b]) < 0;
  });
  std::vector<std::uint32_t> vertex_of(points.size());
  std::vector<Point> vertices;
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    if (vertices.empty() || !Equal(vertices.back(), points[order[k]])) {
      vertices.push_back(points[order[k]]);
    }
    vertex_of[order[k]] = static_cast<std::uint32_t>(vertices.size() - 1);
  }
  const std::size_t num_vertices = vertices.size();
  st.vertices = num_vertices;

  // 4. Merge coincident sub-edges; edges whose net weight cancels do not
  // separate different windings and are dropped.
  std::vector<ArrEdge> arr;
  arr.reserve(points.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const Edge& e = edges[i];
    for (std::uint32_t k = chain_start[i]; k + 1 < chain_start[i + 1]; ++k) {
      const std::uint32_t s = vertex_of[k];
      const std::uint32_t t = vertex_of[k + 1];
      if (s == t) continue;
      if (s < t) {
        arr.push_back({s, t, e.weight, e.line, e.forward});
      } else {
        arr.push_back({t, s, -std::int64_t{e.weight}, e.line, !e.forward});
      }
    }
  }
  std::stable_sort(arr.begin(), arr.end(), [](const ArrEdge& a, const ArrEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  {
    std::size_t w = 0;
    for (std::size_t r = 0; r < arr.size();) {
      ArrEdge merged = arr[r];
      std::size_t q = r + 1;
      for (; q < arr.size() && arr[q].u == merged.u && arr[q].v == merged.v; ++q) {
        merged.weight += arr[q].weight;
      }
      if (merged.weight != 0) arr[w++] = merged;
      r = q;
    }
    arr.resize(w);
  }
  if (arr.empty()) return {};
  const std::size_t m = arr.size();

  // 5. Half-edges: 2k is u -> v, 2k + 1 is v -> u. Outgoing half-edges are
  // kept in counter-clockwise order around each vertex.
  auto origin = [&](std::uint32_t h) { return (h & 1) ? arr[h >> 1].v : arr[h >> 1].u; };
  auto direction = [&](std::uint32_t h) {
    const ArrEdge& e = arr[h >> 1];
    return DirectionOf(e.line, (h & 1) ? !e.forward : e.forward);
  };
  auto weight_of = [&](std::uint32_t h) {
    return (h & 1) ? -arr[h >> 1].weight : arr[h >> 1].weight;
  };
  std::vector<std::uint32_t> out_start(num_vertices + 1, 0);
  for (const ArrEdge& e : arr) {
    ++out_start[e.u + 1];
    ++out_start[e.v + 1];
  }
  std::partial_sum(out_start.begin(), out_start.end(), out_start.begin());
  std::vector<std::uint32_t> out_edges(2 * m);
  {
    std::vector<std::uint32_t> fill(out_start.begin(), out_start.end() - 1);
    for (std::uint32_t h = 0; h < 2 * m; ++h) out_edges[fill[origin(h)]++] = h;
  }
  std::vector<std::uint32_t> position(2 * m);
  std::vector<Direction> dirs(2 * m);
  for (std::uint32_t h = 0; h < 2 * m; ++h) dirs[h] = direction(h);
  for (std::size_t v = 0; v < num_vertices; ++v) {
    auto first = out_edges.begin() + out_start[v];
    auto last = out_edges.begin() + out_start[v + 1];
    std::sort(first, last, [&](std::uint32_t a, std::uint32_t b) { return AngleLess(dirs[a], dirs[b]); });
    for (auto it = first; it != last; ++it) {
      position[*it] = static_cast<std::uint32_t>(it - out_edges.begin() - out_start[v]);
    }
  }
  // Face on the left: continue with the outgoing edge just clockwise of the
  // twin.
  auto next = [&](std::uint32_t h) {
    const std::uint32_t twin = h ^ 1u;
    const std::uint32_t v = origin(twin);
    const std::uint32_t deg = out_start[v + 1] - out_start[v];
    return out_edges[out_start[v] + (position[twin] + deg - 1) % deg];
  };

  // 6. Faces.
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> face(2 * m, kUnset);
  std::vector<std::uint32_t> face_first;
  for (std::uint32_t h = 0; h < 2 * m; ++h) {
    if (face[h] != kUnset) continue;
    const std::uint32_t f = static_cast<std::uint32_t>(face_first.size());
    face_first.push_back(h);
    std::uint32_t g = h;
    do {
      face[g] = f;
      g = next(g);
    } while (g != h);
  }
  const std::size_t num_faces = face_first.size();

  // 7. Connected components and the winding of their outer faces.
  UnionFind uf(num_vertices);
  for (const ArrEdge& e : arr) uf.Join(e.u, e.v);
  std::vector<std::uint32_t> comp_of(num_vertices, kUnset);
  std::vector<std::uint32_t> comp_min_vertex;
  for (std::uint32_t v = 0; v < num_vertices; ++v) {
    if (out_start[v + 1] == out_start[v]) continue;
    const std::uint32_t root = uf.Find(v);
    if (comp_of[root] == kUnset) {
      comp_of[root] = static_cast<std::uint32_t>(comp_min_vertex.size());
      comp_min_vertex.push_back(v);
    }
    comp_of[v] = comp_of[root];
  }
  const std::size_t num_comps = comp_min_vertex.size();
  st.components = num_comps;

  std::vector<std::int64_t> comp_offset(num_comps, 0);
  if (num_comps > 1) {
    // Horizontal bands over y for the +x ray crossing test.
    double ymin = vertices.front().ay, ymax = ymin;
    for (const Point& p : vertices) {
      ymin = std::min(ymin, p.ay);
      ymax = std::max(ymax, p.ay);
    }
    const std::size_t bands = std::max<std::size_t>(1, std::min<std::size_t>(m / 4, 1 << 16));
    const double band_h = std::max((ymax - ymin) / static_cast<double>(bands), 1e-9);
    auto band_of = [&](double y) {
      return static_cast<std::size_t>(
          std::clamp(std::floor((y - ymin) / band_h), 0.0, static_cast<double>(bands - 1)));
    };
    std::vector<std::uint32_t> band_start(bands + 1, 0);
    auto band_range = [&](const ArrEdge& e) {
      const double margin = 1e-3 + 1e-13 * (std::abs(ymin) + std::abs(ymax));
      const double lo = std::min(vertices[e.u].ay, vertices[e.v].ay) - margin;
      const double hi = std::max(vertices[e.u].ay, vertices[e.v].ay) + margin;
      return std::pair{band_of(lo), band_of(hi)};
    };
    for (const ArrEdge& e : arr) {
      const auto [b0, b1] = band_range(e);
      for (std::size_t b = b0; b <= b1; ++b) ++band_start[b + 1];
    }
    std::partial_sum(band_start.begin(), band_start.end(), band_start.begin());
    std::vector<std::uint32_t> band_edges(band_start.back());
    {
      std::vector<std::uint32_t> fill(band_start.begin(), band_start.end() - 1);
      for (std::uint32_t k = 0; k < m; ++k) {
        const auto [b0, b1] = band_range(arr[k]);
        for (std::size_t b = b0; b <= b1; ++b) band_edges[fill[b]++] = k;
      }
    }
    for (std::size_t c = 0; c < num_comps; ++c) {
      const Point& p = vertices[comp_min_vertex[c]];
      const std::size_t b = band_of(p.ay);
      std::int64_t winding = 0;
      for (std::uint32_t s = band_start[b]; s < band_start[b + 1]; ++s) {
        const ArrEdge& e = arr[band_edges[s]];
        if (comp_of[e.u] == c) continue;
        const Point& a = vertices[e.u];
        const Point& z = vertices[e.v];
        const int ay = CompareY(a, p);
        const int zy = CompareY(z, p);
        const bool upward = ay <= 0 && zy > 0;
        const bool downward = zy <= 0 && ay > 0;
        if (!upward && !downward) continue;
        const int side = Orient(e.line, p) * (e.forward ? 1 : -1);
        if (upward && side > 0) winding += e.weight;
        if (downward && side < 0) winding -= e.weight;
      }
      comp_offset[c] = winding;
    }
  }

  // 8. Face windings: across half-edge h, w(left) - w(right) = weight(h).
  std::vector<std::int64_t> face_winding(num_faces, 0);
  std::vector<bool> face_done(num_faces, false);
  std::vector<std::uint32_t> stack;
  for (std::size_t c = 0; c < num_comps; ++c) {
    const std::uint32_t v = comp_min_vertex[c];
    // All outgoing directions at the lexicographic minimum point into the
    // right half-plane; the outer face is left of the most counter-clockwise.
    std::uint32_t top = out_edges[out_start[v]];
    for (std::uint32_t s = out_start[v] + 1; s < out_start[v + 1]; ++s) {
      const std::uint32_t h = out_edges[s];
      if (Cross(dirs[top].dx, dirs[top].dy, dirs[h].dx, dirs[h].dy) > 0) top = h;
    }
    const std::uint32_t outer = face[top];
    if (face_done[outer]) throw GeometryError("arrangement outer face shared between components");
    face_winding[outer] = comp_offset[c];
    face_done[outer] = true;
    stack.push_back(outer);
    while (!stack.empty()) {
      const std::uint32_t f = stack.back();
      stack.pop_back();
      std::uint32_t g = face_first[f];
      do {
        const std::uint32_t other = face[g ^ 1u];
        const std::int64_t expect = face_winding[f] - weight_of(g);
        if (!face_done[other]) {
          face_winding[other] = expect;
          face_done[other] = true;
          stack.push_back(other);
        } else if (face_winding[other] != expect) {
          throw GeometryError("inconsistent winding numbers in arrangement");
        }
        g = next(g);
      } while (g != face_first[f]);
    }
  }

  // 9. Boundary loops of {winding > 0}.
  auto inside = [&](std::uint32_t h) { return face_winding[face[h]] > 0; };
  std::vector<bool> boundary(2 * m, false);
  for (std::uint32_t h = 0; h < 2 * m; ++h) boundary[h] = inside(h) && !inside(h ^ 1u);
  std::vector<bool> used(2 * m, false);
  Region region;
  for (std::uint32_t h0 = 0; h0 < 2 * m; ++h0) {
    if (!boundary[h0] || used[h0]) continue;
    std::vector<std::uint32_t> loop_edges;
    std::uint32_t h = h0;
    do {
      if (used[h]) throw GeometryError("boundary loop tracing did not close");
      used[h] = true;
      loop_edges.push_back(h);
      std::uint32_t g = next(h);
      while (!boundary[g]) g = next(g ^ 1u);
      h = g;
    } while (h != h0);

    // Drop vertices between collinear edges of the same direction.
    const std::size_t k = loop_edges.size();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i) {
      const Direction& din = dirs[loop_edges[(i + k - 1) % k]];
      const Direction& dout = dirs[loop_edges[i]];
      const bool straight = Cross(din.dx, din.dy, dout.dx, dout.dy) == 0 &&
                            Int128{din.dx} * dout.dx + Int128{din.dy} * dout.dy > 0;
      if (!straight) keep.push_back(i);
    }
    if (keep.size() < 3) throw GeometryError("degenerate boundary loop");
    std::size_t start = 0;
    for (std::size_t i = 1; i < keep.size(); ++i) {
      if (CompareXY(vertices[origin(loop_edges[keep[i]])], vertices[origin(loop_edges[keep[start]])]) < 0) {
        start = i;
      }
    }
    Loop loop;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const std::uint32_t he = loop_edges[keep[(start + i) % keep.size()]];
      const ArrEdge& e = arr[he >> 1];
      loop.points.push_back(vertices[origin(he)]);
      loop.lines.push_back(e.line);
      loop.forward.push_back((he & 1) ? !e.forward : e.forward);
    }
    region.loops.push_back(std::move(loop));
  }
  std::sort(region.loops.begin(), region.loops.end(), [](const Loop& a, const Loop& b) {
    const std::size_t n = std::min(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < n; ++i) {
      const int c = CompareXY(a.points[i], b.points[i]);
      if (c != 0) return c < 0;
    }
    return a.points.size() < b.points.size();
  });
  return region;
}

}  // namespace offslice::exact
