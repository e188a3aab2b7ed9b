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

#include "offslice/primitives.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace offslice {

namespace {

constexpr double kPi = std::numbers::pi;

/// Lower bound of the inscribed-circle radius of a convex polygon is A/P;
/// 2A/P equals it for tangential polygons and circles.
double InradiusEstimate(const std::vector<Vec2>& pts) {
  const double perimeter = Perimeter(pts);
  if (perimeter <= 0) return 0;
  return 2 * std::abs(SignedArea(pts)) / perimeter;
}

/// Drops consecutive (cyclic) points closer than tol.
void DedupeCyclic(std::vector<Vec2>& pts, double tol) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) {
    if (out.empty() || length(p - out.back()) > tol) out.push_back(p);
  }
  while (out.size() > 1 && length(out.front() - out.back()) <= tol) out.pop_back();
  pts = std::move(out);
}

std::optional<Contour> Finish(std::vector<Vec2> pts, PrimitiveKind kind) {
  DedupeCyclic(pts, 1e-12);
  if (pts.size() < 3) return std::nullopt;
  if (InradiusEstimate(pts) < kMinCutRadius) return std::nullopt;
  Contour c(std::move(pts), kNoSource, kind);
  if (c.area < 0) c.Reverse();
  return c;
}

/// Largest step in parameter space keeping the sag of a curve with local
/// radius bound rho under eps.
double MaxStep(double rho, double eps) {
  if (eps >= rho) return kPi / 2;
  return 2 * std::acos(1 - eps / rho);
}

/// Points of the ellipse center + a cos(phi) u + b sin(phi) v for phi in
/// [phi0, phi1]. The ellipse is the affine image of the unit circle, so the
/// sag of each chord is at most (1 - cos(dphi/2)) times the largest
/// |A (cos, sin)| over the step.
void AppendEllipseArc(std::vector<Vec2>& out, Vec2 center, Vec2 u, Vec2 v, double a, double b,
                      double phi0, double phi1, double eps, bool include_end) {
  const double span = phi1 - phi0;
  if (span <= 0) {
    if (include_end) out.push_back(center + u * (a * std::cos(phi0)) + v * (b * std::sin(phi0)));
    return;
  }
  const int pieces = std::max(1, static_cast<int>(std::ceil(span / (kPi / 4) - 1e-12)));
  const double piece_span = span / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double q0 = phi0 + p * piece_span;
    const double q1 = q0 + piece_span;
    double max_cos2 = std::max(std::cos(q0) * std::cos(q0), std::cos(q1) * std::cos(q1));
    if (std::floor(q0 / kPi) != std::floor(q1 / kPi)) max_cos2 = 1;
    const double rho = std::sqrt(b * b + (a * a - b * b) * max_cos2);
    const int steps = std::max(1, static_cast<int>(std::ceil(piece_span / MaxStep(std::max(rho, b), eps))));
    for (int i = 0; i < steps; ++i) {
      const double phi = q0 + piece_span * i / steps;
      out.push_back(center + u * (a * std::cos(phi)) + v * (b * std::sin(phi)));
    }
  }
  if (include_end) out.push_back(center + u * (a * std::cos(phi1)) + v * (b * std::sin(phi1)));
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Vec2> ConvexHull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::optional<Contour> StripSection(Point3 p0, Point3 p1, double r, double z) {
  const Vec2 a = xy(p0);
  const Vec2 b = xy(p1);
  const Vec2 dir = (b - a) * (1.0 / length(b - a));
  const Vec2 n = perp(dir);
  const double d0 = z - p0.z;
  const double d1 = z - p1.z;
  const double w0sq = r * r - d0 * d0;
  const double w1sq = r * r - d1 * d1;
  if (w0sq <= 0 && w1sq <= 0) return std::nullopt;
  std::vector<Vec2> pts;
  if (w0sq > 0 && w1sq > 0) {
    const double w0 = std::sqrt(w0sq);
    const double w1 = std::sqrt(w1sq);
    pts = {a - n * w0, b - n * w1, b + n * w1, a + n * w0};
  } else {
    // The plane leaves the cylinder before the far cap: taper to the point
    // where the vertical distance to the axis reaches r.
    const bool start_inside = w0sq > 0;
    const double din = start_inside ? d0 : d1;
    const double dout = start_inside ? d1 : d0;
    const double target = dout > din ? r : -r;
    const double f = (target - din) / (dout - din);
    const Vec2 inside = start_inside ? a : b;
    const Vec2 outside = start_inside ? b : a;
    const Vec2 tip = inside + (outside - inside) * f;
    const double w = std::sqrt(start_inside ? w0sq : w1sq);
    pts = {inside - n * w, tip, inside + n * w};
  }
  return Finish(std::move(pts), PrimitiveKind::kCylinder);
}

}  // namespace

ChordTolerance::ChordTolerance(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw InputError("chord tolerance must be positive and finite");
  }
}

int CircleSegmentCount(double radius, ChordTolerance eps) {
  const double ratio = eps.value() / radius;
  if (!(ratio < 1)) return kMinCurveSegments;
  const double n = std::ceil(kPi / std::acos(1 - ratio));
  return std::max(kMinCurveSegments, static_cast<int>(n));
}

Contour TessellateCircle(Vec2 center, double radius, ChordTolerance eps) {
  const int n = CircleSegmentCount(radius, eps);
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double angle = 2 * kPi * i / n;
    pts[i] = {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
  }
  return Contour(std::move(pts), kNoSource, PrimitiveKind::kSphere);
}

std::optional<Contour> SliceSphere(Point3 center, double radius, double z, ChordTolerance eps) {
  const double d = std::abs(z - center.z);
  if (!(d < radius)) return std::nullopt;
  const double rho = std::sqrt(radius * radius - d * d);
  if (rho < kMinCutRadius) return std::nullopt;
  return TessellateCircle(xy(center), rho, eps);
}

std::optional<Contour> SliceCappedCylinder(Point3 p0, Point3 p1, double radius, double z,
                                           ChordTolerance eps) {
  const Point3 axis = p1 - p0;
  const double len = length(axis);
  if (!(len > 0)) throw GeometryError("capped cylinder with coincident end points");
  if (!(radius > 0)) return std::nullopt;
  const double horiz = std::hypot(axis.x, axis.y) / len;

  if (axis.x == 0 && axis.y == 0) {
    if (z < std::min(p0.z, p1.z) || z > std::max(p0.z, p1.z)) return std::nullopt;
    if (radius < kMinCutRadius) return std::nullopt;
    Contour c = TessellateCircle(xy(p0), radius, eps);
    c.kind = PrimitiveKind::kCylinder;
    return c;
  }
  const double sin_incl = std::abs(axis.z) / len;
  if (sin_incl < kNearHorizontalSin) return StripSection(p0, p1, radius, z);

  // Ellipse centered where the axis meets the plane; semi-axis r / sin along
  // the projected axis h, r across it. The caps bound cos(phi) to
  // [alpha, beta].
  const double t = (z - p0.z) / axis.z;
  const Vec2 center = xy(p0) + xy(axis) * t;
  const Vec2 h = xy(axis) * (1.0 / std::hypot(axis.x, axis.y));
  const Vec2 hp = perp(h);
  const double a = radius / sin_incl;
  const double b = radius;
  const double k = radius * horiz / sin_incl;
  const double alpha = -t * len / k;
  const double beta = (1 - t) * len / k;
  if (alpha >= 1 || beta <= -1) return std::nullopt;

  std::vector<Vec2> pts;
  const double e = eps.value();
  if (alpha <= -1 && beta >= 1) {
    AppendEllipseArc(pts, center, h, hp, a, b, 0, 2 * kPi, e, false);
  } else {
    const double phi_b = beta >= 1 ? 0.0 : std::acos(beta);
    const double phi_a = alpha <= -1 ? kPi : std::acos(alpha);
    if (!(phi_a > phi_b)) return std::nullopt;
    AppendEllipseArc(pts, center, h, hp, a, b, phi_b, phi_a, e, true);
    AppendEllipseArc(pts, center, h, hp, a, b, -phi_a, -phi_b, e, true);
  }
  return Finish(std::move(pts), PrimitiveKind::kCylinder);
}

std::array<Point3, 6> PrismVertices(const std::array<Point3, 3>& tri,
                                    const std::array<double, 3>& radii) {
  Point3 n = cross(tri[1] - tri[0], tri[2] - tri[0]);
  const double len = length(n);
  if (!(len > 0)) throw GeometryError("prism of a degenerate triangle");
  n = n * (1.0 / len);
  std::array<Point3, 6> v;
  for (int i = 0; i < 3; ++i) {
    v[i] = tri[i] + n * radii[i];
    v[i + 3] = tri[i] - n * radii[i];
  }
  return v;
}

std::optional<Contour> SliceConvexPolytope(const std::array<Point3, 6>& vertices, double z) {
  static constexpr int kEdges[9][2] = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5},
                                       {5, 3}, {0, 3}, {1, 4}, {2, 5}};
  double scale = 0;
  for (const Point3& p : vertices) {
    if (!is_finite(p)) throw GeometryError("non-finite polytope vertex");
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  std::vector<Vec2> pts;
  for (const Point3& p : vertices) {
    if (p.z == z) pts.push_back(xy(p));
  }
  for (const auto& [i, j] : kEdges) {
    Point3 lo = vertices[i];
    Point3 hi = vertices[j];
    if (lo.z > hi.z) std::swap(lo, hi);
    if (!(lo.z < z && hi.z > z)) continue;  // on-plane vertices handled above
    const double t = (z - lo.z) / (hi.z - lo.z);
    pts.push_back(xy(lo) + (xy(hi) - xy(lo)) * t);
  }
  if (pts.size() < 3) return std::nullopt;

  // Merge coincident points, then order by angle about the centroid.
  const double tol = 1e-12 * std::max(1.0, scale);
  std::vector<Vec2> unique;
  for (const Vec2& p : pts) {
    if (std::none_of(unique.begin(), unique.end(), [&](Vec2 q) { return length(p - q) <= tol; })) {
      unique.push_back(p);
    }
  }
  if (unique.size() < 3) return std::nullopt;
  Vec2 centroid{0, 0};
  for (const Vec2& p : unique) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(unique.size()));
  std::sort(unique.begin(), unique.end(), [&](Vec2 a, Vec2 b) {
    return std::atan2(a.y - centroid.y, a.x - centroid.x) <
           std::atan2(b.y - centroid.y, b.x - centroid.x);
  });

  const std::size_t n = unique.size();
  const double area = SignedArea(unique);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = unique[(i + 1) % n] - unique[i];
    const Vec2 e1 = unique[(i + 2) % n] - unique[(i + 1) % n];
    if (cross(e0, e1) < -1e-9 * std::max(1.0, std::abs(area))) {
      throw GeometryError("polytope section is not convex; radius gradient too strong");
    }
  }
  return Finish(std::move(unique), PrimitiveKind::kPrism);
}

std::optional<Contour> SliceConicalCapsule(Point3 p0, double r0, Point3 p1, double r1, double z,
                                           ChordTolerance eps) {
  if (r0 < 0 || r1 < 0 || (r0 == 0 && r1 == 0)) return std::nullopt;
  const Point3 axis = p1 - p0;
  const double dr = r1 - r0;
  auto center = [&](double t) { return p0 + axis * t; };
  auto rho = [&](double t) { return r0 + dr * t; };
  auto section_radius = [&](double t) {
    const double dz = z - center(t).z;
    const double g = rho(t) * rho(t) - dz * dz;
    return g > 0 ? std::sqrt(g) : 0.0;
  };

  // Balls of the family reaching the plane: |z - cz(t)| <= rho(t), two linear
  // inequalities in t.
  double lo = 0;
  double hi = 1;
  for (double sign : {1.0, -1.0}) {
    // sign * (z - p0.z - axis.z t) - r0 - dr t <= 0  <=>  c0 + c1 t <= 0
    const double c0 = sign * (z - p0.z) - r0;
    const double c1 = -sign * axis.z - dr;
    if (c1 == 0) {
      if (c0 > 0) return std::nullopt;
    } else if (c1 > 0) {
      hi = std::min(hi, -c0 / c1);
    } else {
      lo = std::max(lo, -c0 / c1);
    }
  }
  if (lo > hi) return std::nullopt;

  // Adaptive samples of the family: the hull of two neighboring sections
  // contains the interpolated disk, so refine while the section radius at the
  // midpoint exceeds the interpolated one by more than eps/2.
  const double half_eps = eps.value() / 2;
  std::vector<double> samples;
  auto refine = [&](auto&& self, double ta, double ra, double tb, double rb, int depth) -> void {
    const double tm = 0.5 * (ta + tb);
    const double rm = section_radius(tm);
    if (depth < 24 && rm - 0.5 * (ra + rb) > half_eps) {
      self(self, ta, ra, tm, rm, depth + 1);
      samples.push_back(tm);
      self(self, tm, rm, tb, rb, depth + 1);
    }
  };
  // Seed with a few interior samples so a radius bump in the middle of a
  // long interval is not missed.
  constexpr int kSeeds = 8;
  samples.push_back(lo);
  for (int i = 1; i <= kSeeds; ++i) {
    const double ta = lo + (hi - lo) * (i - 1) / kSeeds;
    const double tb = lo + (hi - lo) * i / kSeeds;
    refine(refine, ta, section_radius(ta), tb, section_radius(tb), 0);
    samples.push_back(tb);
  }

  std::vector<Vec2> pts;
  const ChordTolerance circle_eps(half_eps);
  for (double t : samples) {
    const Vec2 c = xy(center(t));
    const double r = section_radius(t);
    if (r < kMinCutRadius) {
      pts.push_back(c);
      continue;
    }
    const Contour circle = TessellateCircle(c, r, circle_eps);
    pts.insert(pts.end(), circle.points.begin(), circle.points.end());
  }
  return Finish(ConvexHull(std::move(pts)), PrimitiveKind::kConeCapsule);
}

std::optional<Segment2> SliceTriangle(const Triangle& tri, const IndexedMesh& mesh, double z) {
  const auto& verts = mesh.vertices();
  std::array<bool, 3> below{};
  for (int k = 0; k < 3; ++k) below[k] = verts[tri.v[k]].z < z;
  if (below[0] == below[1] && below[1] == below[2]) return std::nullopt;

  // Walking v0 -> v1 -> v2 the boundary crosses the plane once downward and
  // once upward; with the solid on the left the section runs from the
  // downward crossing to the upward one.
  auto crossing = [&](std::uint32_t u, std::uint32_t w, Vec2& point, CrossingKey& key) {
    const std::uint32_t vb = verts[u].z < z ? u : w;
    const std::uint32_t va = vb == u ? w : u;
    const Point3& pb = verts[vb];
    const Point3& pa = verts[va];
    if (pa.z == z) {
      point = xy(pa);
      key = {va, va};
      return;
    }
    const double t = (z - pb.z) / (pa.z - pb.z);
    point = xy(pb) + (xy(pa) - xy(pb)) * t;
    key = {std::min(u, w), std::max(u, w)};
  };

  Segment2 seg;
  seg.source = tri.id;
  bool have_up = false;
  bool have_down = false;
  for (int k = 0; k < 3; ++k) {
    const int n = (k + 1) % 3;
    if (below[k] == below[n]) continue;
    if (below[k]) {
      crossing(tri.v[k], tri.v[n], seg.to, seg.to_key);
      have_up = true;
    } else {
      crossing(tri.v[k], tri.v[n], seg.from, seg.from_key);
      have_down = true;
    }
  }
  if (!have_up || !have_down || seg.from_key == seg.to_key) return std::nullopt;
  return seg;
}

}  // namespace offslice
