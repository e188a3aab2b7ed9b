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

// End-to-end acceptance checks. Prints one line per check:
//   PASS|FAIL|SKIP <n> <name>: <details>
// Exits non-zero if any check fails. SKIP marks a check that cannot run in
// this environment; the line says why.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "offslice/contour.h"
#include "offslice/engine.h"
#include "offslice/primitives.h"
#include "offslice/serialize.h"
#include "support/oracle.h"
#include "support/shapes.h"

namespace offslice {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string details;
};

int failures = 0;

void Report(int n, const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {Verdict::kFail, std::string("exception: ") + e.what()};
  }
  const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
  if (o.verdict == Verdict::kFail) ++failures;
  std::printf("%s %d %s: %s\n", tag, n, name, o.details.c_str());
  std::fflush(stdout);
}

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string Dump(const std::vector<SliceResult>& results) {
  std::string s;
  for (const SliceResult& r : results) s += WriteJsonl(r.contours) + "#" + r.error + "\n";
  return s;
}

// Distance from p to the axis-aligned box [lo, hi].
double BoxDistance(Point3 p, Point3 lo, Point3 hi) {
  const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
  const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
  const double dz = std::max({lo.z - p.z, 0.0, p.z - hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Outcome OracleDilate() {
  const TriangleSoup soup = testing::CubeSoup();
  const IndexedMesh cube = IndexedMesh::FromSoup(soup);
  const double r = 0.2;
  EngineConfig cfg;
  cfg.chord = 0.005;
  const SlicePlan plan = SlicePlan::Uniform(-r, (1 + 2 * r) / 19, 20);
  const auto t0 = Clock::now();
  const auto slices = SliceOffset(cube, OffsetSpec::Dilate(r), plan, cfg);
  const double secs = Seconds(t0);
  const BitmapSpec spec = testing::SquareGrid({-0.3, -0.3}, 1.6, 256);
  const double band = cfg.chord + 1.5 * spec.pitch;
  std::size_t disagree = 0, outside_band = 0;
  for (const SliceResult& s : slices) {
    const Bitmap bm = RasterizeWinding(s.contours, spec);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const Vec2 c = bm.PixelCenter(x, y);
        const Point3 p{c.x, c.y, s.z};
        const bool want = testing::InDilation(p, soup, r);
        if (want == bm.Get(x, y)) continue;
        ++disagree;
        if (std::abs(BoxDistance(p, {0, 0, 0}, {1, 1, 1}) - r) > band) ++outside_band;
      }
    }
  }
  const double total = Seconds(t0);
  const bool ok = outside_band == 0 && secs < 10;
  return {ok ? Verdict::kPass : Verdict::kFail,
          Fmt("%zu slices, %zu disagreeing pixels, %zu outside the %.4f mm band; engine %.3f s "
              "single-threaded (< 10 s), %.1f s with the oracle",
              slices.size(), disagree, outside_band, band, secs, total)};
}

Outcome SphereOffset() {
  const IndexedMesh ico = testing::Icosphere(3);
  EngineConfig cfg;
  cfg.chord = 0.005;
  const SliceResult r = SliceSingle(ico, OffsetSpec::Dilate(0.5), 0, cfg);
  double worst = 0;
  std::size_t n = 0;
  for (const Contour& c : r.contours.contours) {
    for (Vec2 p : c.points) {
      worst = std::max(worst, std::abs(length(p) - 1.5));
      ++n;
    }
  }
  const bool ok = n > 0 && r.contours.contours.size() == 1 && worst <= 0.015;
  return {ok ? Verdict::kPass : Verdict::kFail,
          Fmt("%zu vertices in %zu contour(s), max | |p| - 1.5 | = %.5f (<= 0.015)", n,
              r.contours.contours.size(), worst)};
}

Outcome ErosionAnalytic() {
  const IndexedMesh cube = testing::Cube();
  EngineConfig cfg;
  const SliceResult e = SliceSingle(cube, OffsetSpec::Erode(0.2), 0.5, cfg);
  const double area = e.contours.NetArea();
  const auto deep =
      SliceOffset(cube, OffsetSpec::Erode(0.5), SlicePlan::Covering(0, 1, 0.01, 0), cfg);
  const std::size_t nonempty = std::count_if(deep.begin(), deep.end(), [](const SliceResult& s) {
    return !s.contours.empty();
  });
  const bool ok = e.contours.contours.size() == 1 && std::abs(area - 0.36) <= 0.0036 &&
                  nonempty == 0;
  return {ok ? Verdict::kPass : Verdict::kFail,
          Fmt("erode 0.2 at z=0.5: %zu contour(s), area %.6f; erode 0.5: %zu of %zu slices "
              "non-empty",
              e.contours.contours.size(), area, nonempty, deep.size())};
}

Outcome ContainmentChain() {
  EngineConfig cfg;
  cfg.chord = 0.005;
  std::size_t violations = 0, checked = 0;
  const BitmapSpec spec = testing::SquareGrid({-1.3, -1.3}, 2.6, 256);
  for (const IndexedMesh& mesh : {testing::Cube({-0.5, -0.5, -0.5}), testing::Icosphere(3)}) {
    const Box3 b = MeshBounds(mesh);
    for (int i = 0; i < 10; ++i) {
      const double z = b.min.z + (b.max.z - b.min.z) * (i + 0.5) / 10;
      const Bitmap er =
          RasterizeWinding(SliceSingle(mesh, OffsetSpec::Erode(0.1), z, cfg).contours, spec);
      const Bitmap base =
          RasterizeWinding(SliceSingle(mesh, OffsetSpec::Dilate(0), z, cfg).contours, spec);
      const Bitmap di =
          RasterizeWinding(SliceSingle(mesh, OffsetSpec::Dilate(0.1), z, cfg).contours, spec);
      violations += testing::CountOutside(er, base, 1) + testing::CountOutside(base, di, 1);
      checked += er.Count() + base.Count();
    }
  }
  return {violations == 0 ? Verdict::kPass : Verdict::kFail,
          Fmt("cube and icosphere, 10 heights each: %zu violations outside the 1 px band "
              "(%zu set pixels checked)",
              violations, checked)};
}

Outcome Determinism() {
  const IndexedMesh torus = IndexedMesh::FromSoup(testing::TorusSoup(3, 1, 48, 24));
  const OffsetSpec spec = OffsetSpec::Dilate(0.3);
  const SlicePlan plan = SlicePlan::Covering(-1, 1, 0.1, 0.3);
  EngineConfig base;
  base.chord = 0.01;
  base.strategy = AccumulationStrategy::kProgressive;
  base.progressive_batch = 256;
  const std::string ref = Dump(SliceOffset(torus, spec, plan, base));
  int runs = 0, differ = 0;
  for (unsigned k : {1u, 2u, 8u}) {
    for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{0}}) {
      EngineConfig cfg = base;
      cfg.workers = k;
      differ += Dump(SliceOffset(torus, spec, plan, cfg, {n})) != ref;
      ++runs;
    }
  }
  EngineConfig dc = base;
  dc.strategy = AccumulationStrategy::kDivideConquer;
  dc.leaf_size = 64;
  differ += Dump(SliceOffset(torus, spec, plan, dc)) != ref;
  ++runs;
  return {differ == 0 ? Verdict::kPass : Verdict::kFail,
          Fmt("%d runs (K in {1,2,8} x N in {1,4,all}, plus divide-and-conquer L=64) vs "
              "progressive k=256: %d differ; %zu slices, %zu bytes of JSONL",
              runs, differ, plan.size(), ref.size())};
}

Outcome AccumulationEquivalence() {
  const BitmapSpec spec = testing::SquareGrid({-11, -11}, 22, 512);
  std::size_t mismatched = 0;
  int slices = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-9, 9), rad(0.05, 1.5);
    std::vector<Contour> circles;
    for (int i = 0; i < 500; ++i) {
      Contour c = TessellateCircle({pos(rng), pos(rng)}, rad(rng), ChordTolerance(0.01));
      c.source = i;
      c.kind = PrimitiveKind::kSphere;
      circles.push_back(std::move(c));
    }
    ContourSet all;
    all.contours = circles;
    const Bitmap direct = RasterizeWinding(WindingExtract(all), spec);
    const Bitmap prog = RasterizeWinding(AccumulateProgressive(circles, 256), spec);
    const Bitmap dc = RasterizeWinding(AccumulateDivideConquer(circles, 64), spec);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        mismatched += direct.Get(x, y) != prog.Get(x, y) || direct.Get(x, y) != dc.Get(x, y);
      }
    }
    ++slices;
  }
  return {mismatched == 0 ? Verdict::kPass : Verdict::kFail,
          Fmt("%d slices of 500 circles, 512x512 raster: %zu mismatched pixels", slices,
              mismatched)};
}

// Shared by the two large-mesh checks.
struct LargeRun {
  IndexedMesh mesh;
  SlicePlan plan = SlicePlan::Uniform(0, 1, 1);
  EngineConfig cfg;
  OffsetSpec spec = OffsetSpec::Dilate(1);
  std::vector<SliceResult> full;
  double full_secs = 0;
};

LargeRun& Large() {
  static LargeRun run = [] {
    LargeRun r;
    r.mesh = IndexedMesh::FromSoup(testing::TorusSoup(20, 5, 224, 224));
    r.plan = SlicePlan::Covering(-5, 5, 0.5, 1);
    r.cfg.chord = 0.05;
    r.cfg.strategy = AccumulationStrategy::kDivideConquer;
    r.cfg.leaf_size = 8;
    const auto t0 = Clock::now();
    r.full = SliceOffset(r.mesh, r.spec, r.plan, r.cfg);
    r.full_secs = Seconds(t0);
    return r;
  }();
  return run;
}

Outcome ParallelScaling() {
  LargeRun& run = Large();
  EngineConfig cfg = run.cfg;
  cfg.workers = 4;
  const auto t0 = Clock::now();
  const auto four = SliceOffset(run.mesh, run.spec, run.plan, cfg);
  const double secs = Seconds(t0);
  const double speedup = run.full_secs / secs;
  const bool same = Dump(four) == Dump(run.full);
  const unsigned cores = std::thread::hardware_concurrency();
  const std::string details =
      Fmt("%zu triangles, %zu slices: 1 worker %.2f s, 4 workers %.2f s, speedup %.2fx; results "
          "%s; %u hardware thread(s)",
          run.mesh.num_triangles(), run.plan.size(), run.full_secs, secs, speedup,
          same ? "identical" : "DIFFER", cores);
  if (!same) return {Verdict::kFail, details};
  if (cores < 4) {
    return {Verdict::kSkip, details + "; speedup needs >= 4 hardware threads, not measurable here"};
  }
  return {speedup >= 2.0 ? Verdict::kPass : Verdict::kFail, details + " (>= 2.0x)"};
}

Outcome SinglePreview() {
  LargeRun& run = Large();
  const std::size_t j = run.plan.size() / 2;
  const auto t0 = Clock::now();
  const SliceResult one = SliceSingle(run.mesh, run.spec, run.plan.height(j), run.cfg);
  const double secs = Seconds(t0);
  const double ratio = run.full_secs / secs;
  const bool same = WriteJsonl(one.contours) == WriteJsonl(run.full[j].contours);
  const bool ok = same && ratio >= 10;
  return {ok ? Verdict::kPass : Verdict::kFail,
          Fmt("slice %zu of %zu at z=%.3f: single %.3f s vs full plan %.2f s (%.1fx, >= 10x); "
              "output %s",
              j, run.plan.size(), run.plan.height(j), secs, run.full_secs, ratio,
              same ? "byte-identical" : "DIFFERS")};
}

Outcome SliceInterval() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t mismatches = 0, checks = 0;
  for (int t = 0; t < 1000; ++t) {
    const double tau = std::pow(10.0, -2.5 + 2.5 * u(rng));
    const double z0 = -10 + 20 * u(rng);
    const std::size_t n = 1 + static_cast<std::size_t>(500 * u(rng));
    const SlicePlan uniform = SlicePlan::Uniform(z0, tau, n);
    std::vector<double> h = uniform.heights();
    for (double& v : h) v += 0.4 * tau * (u(rng) - 0.5);
    const SlicePlan explicit_plan = SlicePlan::Explicit(h);
    // A random triangle spanning part of the plan.
    std::array<double, 3> zs;
    for (double& z : zs) z = z0 - 3 * tau + (n + 6) * tau * u(rng);
    if (t % 5 == 0) zs[0] = uniform.height(static_cast<std::size_t>(u(rng) * n));
    if (t % 7 == 0) zs[1] = zs[2] = zs[0];
    const double zmin = *std::min_element(zs.begin(), zs.end());
    const double zmax = *std::max_element(zs.begin(), zs.end());
    const double r = t % 4 == 0 ? 0 : 5 * tau * u(rng);
    for (const SlicePlan* p : {&uniform, &explicit_plan}) {
      const SliceRange got = AffectedSlices({zmin, zmax}, r, *p);
      std::size_t first = 1, last = 0;
      bool any = false;
      for (std::size_t j = 0; j < p->size(); ++j) {
        if (p->height(j) >= zmin - r && p->height(j) <= zmax + r) {
          if (!any) first = j;
          last = j;
          any = true;
        }
      }
      const bool same = any ? (!got.empty() && got.first == first && got.last == last) : got.empty();
      mismatches += !same;
      ++checks;
    }
  }
  return {mismatches == 0 ? Verdict::kPass : Verdict::kFail,
          Fmt("1000 random triangles, uniform and explicit plans: %zu of %zu ranges differ from "
              "enumeration",
              mismatches, checks)};
}

Outcome Bunny() {
  const char* path = std::getenv("OFFSLICE_BUNNY_STL");
  if (!path || !*path) {
    return {Verdict::kSkip, "asset absent; set OFFSLICE_BUNNY_STL to the Voronoi Bunny STL to run"};
  }
  const IndexedMesh mesh = LoadStlFile(path);
  const Box3 b = MeshBounds(mesh);
  const SlicePlan plan = SlicePlan::Covering(b.min.z, b.max.z, 0.04, 0);
  const bool ok = plan.size() == 2379;
  return {ok ? Verdict::kPass : Verdict::kFail,
          Fmt("%zu triangles, z in [%.4f, %.4f] mm: %zu slices at tau = 0.04 mm (expected 2379)",
              mesh.num_triangles(), b.min.z, b.max.z, plan.size())};
}

// Ray from the origin in direction d against closed polygons: farthest hit.
double BoundaryRadius(const ContourSet& set, Vec2 d) {
  double best = 0;
  for (const Contour& c : set.contours) {
    const std::size_t n = c.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = c.points[i], b = c.points[(i + 1) % n];
      const Vec2 e = b - a;
      const double den = cross(d, e);
      if (std::abs(den) < 1e-15) continue;
      const double t = cross(a, e) / den;
      const double s = cross(a, d) / den;
      if (t > 0 && s >= 0 && s <= 1) best = std::max(best, t);
    }
  }
  return best;
}

Outcome VariableRadius() {
  // Needle tetrahedron along z; the apex carries radius 1, the base 0.
  const double w = 1e-4;
  const Point3 a{0, 0, 0}, b{w, 0, 0}, c{0, w, 0}, apex{0, 0, 2};
  const TriangleSoup soup = {{a, c, b}, {a, b, apex}, {b, c, apex}, {c, a, apex}};
  const IndexedMesh mesh = IndexedMesh::FromSoup(soup);
  std::vector<double> radii(mesh.num_vertices(), 0);
  for (std::uint32_t v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.vertices()[v].z == 2) radii[v] = 1;
  }
  EngineConfig cfg;
  cfg.chord = 0.002;
  const double tol = cfg.chord + w + 1e-4;  // chord, needle width, bisection
  double worst = 0;
  int heights = 0;
  for (int i = 0; i < 10; ++i) {
    const double z = 0.1 + 2.7 * i / 9;  // through the cone, the ball cap, above the apex
    const SliceResult res = SliceSingle(mesh, OffsetSpec::Variable(radii), z, cfg);
    if (!res.ok()) return {Verdict::kFail, res.error};
    for (int k = 0; k < 72; ++k) {
      const double ang = 2 * std::numbers::pi * k / 72;
      const Vec2 d{std::cos(ang), std::sin(ang)};
      // Oracle radius by bisection on point membership.
      double lo = 0, hi = 2;
      if (!testing::InConicalCapsule({0, 0, z}, a, 0, apex, 1)) {
        hi = 0;
      } else {
        for (int it = 0; it < 40; ++it) {
          const double mid = (lo + hi) / 2;
          (testing::InConicalCapsule({mid * d.x, mid * d.y, z}, a, 0, apex, 1) ? lo : hi) = mid;
        }
      }
      const double got = BoundaryRadius(res.contours, d);
      worst = std::max(worst, std::abs(got - hi));
    }
    ++heights;
  }
  return {worst <= tol ? Verdict::kPass : Verdict::kFail,
          Fmt("r0=0, r1=1 over z in [0,2], %d heights x 72 rays: max radius error %.5f (<= %.5f)",
              heights, worst, tol)};
}

}  // namespace
}  // namespace offslice

int main() {
  using namespace offslice;
  Report(1, "oracle equivalence (dilate)", OracleDilate);
  Report(2, "analytic sphere offset", SphereOffset);
  Report(3, "erosion analytic", ErosionAnalytic);
  Report(4, "containment chain", ContainmentChain);
  Report(5, "determinism", Determinism);
  Report(6, "accumulation equivalence", AccumulationEquivalence);
  Report(7, "parallel scaling", ParallelScaling);
  Report(8, "single-slice preview cost", SinglePreview);
  Report(9, "slice-interval formula", SliceInterval);
  Report(10, "bunny reproduction", Bunny);
  Report(11, "variable radius", VariableRadius);
  return failures == 0 ? 0 : 1;
}
