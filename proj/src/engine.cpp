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

#include "offslice/engine.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "contour_internal.h"
#include "offslice/primitives.h"

namespace offslice {

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool Finite(double v) { return std::isfinite(v); }

}  // namespace

SlicePlan SlicePlan::Uniform(double z0, double tau, std::size_t count) {
  if (!Finite(z0)) throw InputError("slice origin must be finite");
  if (!(tau > 0) || !Finite(tau)) throw InputError("slice thickness must be positive");
  if (count == 0) throw InputError("slice plan is empty");
  SlicePlan plan;
  plan.uniform_ = true;
  plan.z0_ = z0;
  plan.tau_ = tau;
  plan.count_ = count;
  return plan;
}

SlicePlan SlicePlan::Explicit(std::vector<double> heights) {
  if (heights.empty()) throw InputError("slice plan is empty");
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (!Finite(heights[i])) throw InputError("slice heights must be finite");
    if (i > 0 && !(heights[i] > heights[i - 1])) {
      throw InputError("slice heights must be strictly increasing");
    }
  }
  SlicePlan plan;
  plan.uniform_ = false;
  plan.heights_ = std::move(heights);
  return plan;
}

SlicePlan SlicePlan::Covering(double z_min, double z_max, double tau, double pad) {
  if (!(tau > 0) || !Finite(tau)) throw InputError("slice thickness must be positive");
  if (!(z_max >= z_min)) throw InputError("empty z range");
  const double z0 = z_min - pad;
  const double span = (z_max + pad - z0) / tau + 1e-9;
  if (!(span < 1e9)) throw InputError("too many slices");
  return Uniform(z0, tau, static_cast<std::size_t>(std::floor(span)) + 1);
}

std::vector<double> SlicePlan::heights() const {
  if (!uniform_) return heights_;
  std::vector<double> h(count_);
  for (std::size_t j = 0; j < count_; ++j) h[j] = height(j);
  return h;
}

const char* ToString(OffsetMode mode) {
  switch (mode) {
    case OffsetMode::kDilate:
      return "dilate";
    case OffsetMode::kErode:
      return "erode";
    case OffsetMode::kVariable:
      return "variable";
  }
  return "unknown";
}

const char* ToString(AccumulationStrategy strategy) {
  switch (strategy) {
    case AccumulationStrategy::kDirect:
      return "direct";
    case AccumulationStrategy::kProgressive:
      return "progressive";
    case AccumulationStrategy::kDivideConquer:
      return "divide-conquer";
  }
  return "unknown";
}

double OffsetSpec::MaxRadius() const {
  if (mode != OffsetMode::kVariable) return radius;
  double m = 0;
  for (double r : vertex_radii) m = std::max(m, r);
  return m;
}

std::size_t BisectHeight(std::span<const double> heights, double z) {
  return static_cast<std::size_t>(std::lower_bound(heights.begin(), heights.end(), z) -
                                  heights.begin());
}

long long UniformSliceEstimate(double z, const SlicePlan& plan) {
  const double q = std::floor((z - plan.z0()) / plan.tau());
  if (q < -1e15) return -1000000000000000LL;
  if (q > 1e15) return 1000000000000000LL;
  return static_cast<long long>(q);
}

SliceRange AffectedSlices(ZInterval interval, double r_max, const SlicePlan& plan) {
  const double lo = interval.z_min - r_max;
  const double hi = interval.z_max + r_max;
  const std::size_t n = plan.size();
  std::size_t first = 0;
  std::size_t end = 0;  // one past the last slice with height <= hi
  if (plan.uniform()) {
    const auto clamp = [&](long long j) {
      return static_cast<std::size_t>(std::clamp<long long>(j, 0, static_cast<long long>(n)));
    };
    // The rounding estimate, then corrected against the actual heights.
    first = clamp(UniformSliceEstimate(lo, plan));
    while (first > 0 && plan.height(first - 1) >= lo) --first;
    while (first < n && plan.height(first) < lo) ++first;
    end = clamp(UniformSliceEstimate(hi, plan) + 1);
    while (end < n && plan.height(end) <= hi) ++end;
    while (end > 0 && plan.height(end - 1) > hi) --end;
  } else {
    const std::span<const double> h = plan.explicit_heights();
    first = BisectHeight(h, lo);
    end = static_cast<std::size_t>(std::upper_bound(h.begin(), h.end(), hi) - h.begin());
  }
  if (first >= end) return {};
  return {first, end - 1};
}

namespace {

struct Bucket {
  std::mutex mutex;
  std::vector<Segment2> segments;
  std::vector<Contour> primitives;
};

class Slicer {
 public:
  Slicer(const IndexedMesh& mesh, const OffsetSpec& spec, const SlicePlan& plan,
         const EngineConfig& cfg)
      : mesh_(mesh), spec_(spec), plan_(plan), cfg_(cfg), eps_(cfg.chord) {
    if (cfg.workers < 1) throw InputError("worker count must be at least 1");
    if (cfg.progressive_batch < 2) throw InputError("progressive batch size must be at least 2");
    if (cfg.leaf_size < 2) throw InputError("divide-and-conquer leaf size must be at least 2");
    if (spec.mode == OffsetMode::kVariable) {
      if (spec.vertex_radii.size() != mesh.num_vertices()) {
        throw InputError("expected " + std::to_string(mesh.num_vertices()) +
                         " vertex radii, got " + std::to_string(spec.vertex_radii.size()));
      }
      for (double r : spec.vertex_radii) {
        if (!(r >= 0) || !Finite(r)) throw InputError("vertex radii must be finite and >= 0");
      }
    } else if (!(spec.radius >= 0) || !Finite(spec.radius)) {
      throw InputError("offset radius must be finite and >= 0");
    }
    with_primitives_ = spec.MaxRadius() > 0;
    heights_ = plan.heights();
    intervals_.reserve(mesh.num_triangles());
    reach_.reserve(mesh.num_triangles());
    for (const Triangle& t : mesh.triangles()) {
      intervals_.push_back(TriangleZInterval(t, mesh));
      reach_.push_back(TriangleReach(t));
    }
  }

  void Run(std::size_t slab_size, const SliceSink& sink, RunStats* stats) {
    const std::size_t n = plan_.size();
    if (slab_size == 0) slab_size = n;
    for (std::size_t s0 = 0; s0 < n; s0 += slab_size) {
      const std::size_t s1 = std::min(n, s0 + slab_size);
      std::vector<Bucket> buckets(s1 - s0);
      auto t0 = Clock::now();
      Generate(s0, s1, buckets, stats);
      if (stats) {
        stats->generate_ms += MillisSince(t0);
        ++stats->slabs;
      }
      t0 = Clock::now();
      std::vector<SliceResult> results = ContourSlab(s0, buckets);
      if (stats) stats->contour_ms += MillisSince(t0);
      for (SliceResult& r : results) sink(std::move(r));
    }
  }

 private:
  double Radius(std::uint32_t v) const {
    return spec_.mode == OffsetMode::kVariable ? spec_.vertex_radii[v] : spec_.radius;
  }

  double TriangleReach(const Triangle& t) const {
    if (!with_primitives_) return 0;
    return std::max({Radius(t.v[0]), Radius(t.v[1]), Radius(t.v[2])});
  }

  // Everything triangle `t` contributes to plane z.
  void Visit(const Triangle& t, double z, std::vector<Segment2>& segments,
             std::vector<offslice::Contour>& prims) const {
    if (auto seg = SliceTriangle(t, mesh_, z)) segments.push_back(*seg);
    if (!with_primitives_) return;
    const auto& verts = mesh_.vertices();
    const bool variable = spec_.mode == OffsetMode::kVariable;
    auto emit = [&](std::optional<offslice::Contour> c) {
      if (c) {
        c->source = t.id;
        prims.push_back(std::move(*c));
      }
    };
    const std::array<double, 3> radii = {Radius(t.v[0]), Radius(t.v[1]), Radius(t.v[2])};
    if (!t.degenerate && (radii[0] > 0 || radii[1] > 0 || radii[2] > 0)) {
      const std::array<Point3, 3> p = {verts[t.v[0]], verts[t.v[1]], verts[t.v[2]]};
      emit(SliceConvexPolytope(PrismVertices(p, radii), z));
    }
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t v = t.v[i];
      if (mesh_.vertex_owner(v) != t.id || radii[i] <= 0) continue;
      bool repeated = false;
      for (int k = 0; k < i; ++k) repeated |= t.v[k] == v;
      if (!repeated) emit(SliceSphere(verts[v], radii[i], z, eps_));
    }
    for (std::uint32_t e : mesh_.triangle_edges(t.id)) {
      if (e == kNoIndex) continue;
      const Edge& edge = mesh_.edges()[e];
      if (edge.owner != t.id) continue;
      const double ra = Radius(edge.a);
      const double rb = Radius(edge.b);
      if (!variable) {
        emit(SliceCappedCylinder(verts[edge.a], verts[edge.b], ra, z, eps_));
      } else if (ra > 0 || rb > 0) {
        emit(SliceConicalCapsule(verts[edge.a], ra, verts[edge.b], rb, z, eps_));
      }
    }
  }

  void Generate(std::size_t s0, std::size_t s1, std::vector<Bucket>& buckets,
                RunStats* stats) const {
    const auto& tris = mesh_.triangles();
    std::atomic<std::size_t> cursor{0};
    std::atomic<std::size_t> visits{0};
    std::atomic<std::size_t> nseg{0};
    std::atomic<std::size_t> nprim{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
      const std::size_t width = s1 - s0;
      std::vector<std::vector<Segment2>> segs(width);
      std::vector<std::vector<offslice::Contour>> prims(width);
      std::size_t local_visits = 0;
      try {
        constexpr std::size_t kChunk = 64;
        while (true) {
          const std::size_t begin = cursor.fetch_add(kChunk);
          if (begin >= tris.size()) break;
          const std::size_t end = std::min(tris.size(), begin + kChunk);
          for (std::size_t i = begin; i < end; ++i) {
            const SliceRange range = AffectedSlices(intervals_[i], reach_[i], plan_);
            if (range.empty() || range.last < s0 || range.first >= s1) continue;
            const std::size_t j0 = std::max(range.first, s0);
            const std::size_t j1 = std::min(range.last, s1 - 1);
            for (std::size_t j = j0; j <= j1; ++j) {
              ++local_visits;
              Visit(tris[i], heights_[j], segs[j - s0], prims[j - s0]);
            }
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        cursor.store(tris.size());
      }
      // Flush the staged output into the shared slice buckets.
      std::size_t ns = 0;
      std::size_t np = 0;
      for (std::size_t j = 0; j < width; ++j) {
        if (segs[j].empty() && prims[j].empty()) continue;
        ns += segs[j].size();
        np += prims[j].size();
        Bucket& b = buckets[j];
        std::lock_guard lock(b.mutex);
        b.segments.insert(b.segments.end(), segs[j].begin(), segs[j].end());
        std::move(prims[j].begin(), prims[j].end(), std::back_inserter(b.primitives));
      }
      visits += local_visits;
      nseg += ns;
      nprim += np;
    };
    RunWorkers(worker);
    if (error) std::rethrow_exception(error);
    if (stats) {
      stats->triangle_visits += visits;
      stats->segments += nseg;
      stats->primitive_contours += nprim;
    }
  }

  SliceResult ContourOne(std::size_t j, Bucket& bucket) const {
    SliceResult result;
    result.index = j;
    result.z = heights_[j];
    result.contours.z = result.z;

    // Arrival order depends on scheduling; restore a canonical one.
    std::sort(bucket.segments.begin(), bucket.segments.end(),
              [](const Segment2& a, const Segment2& b) {
                if (a.source != b.source) return a.source < b.source;
                return a.from_key < b.from_key;
              });
    ContourSet base;
    try {
      base = SegmentsToContours(bucket.segments, result.z);
    } catch (const ChainError& e) {
      result.error = e.what();
      return result;
    }
    base.SortCanonical();
    const ExtractOptions options{cfg_.convex_fast_path};
    exact::Region region = detail::ExtractRegion(base.contours, 1, options);

    if (!bucket.primitives.empty()) {
      ContourSet prims;
      prims.contours = std::move(bucket.primitives);
      prims.SortCanonical();
      detail::Accumulation strategy = detail::Accumulation::kDirect;
      std::size_t batch = 0;
      switch (cfg_.strategy) {
        case AccumulationStrategy::kDirect:
          break;
        case AccumulationStrategy::kProgressive:
          strategy = detail::Accumulation::kProgressive;
          batch = cfg_.progressive_batch;
          break;
        case AccumulationStrategy::kDivideConquer:
          strategy = detail::Accumulation::kDivideConquer;
          batch = cfg_.leaf_size;
          break;
      }
      const exact::Region cover = detail::AccumulateRegion(prims.contours, strategy, batch, options);
      // Erosion adds the reversed cover, so winding stays positive only where
      // the base is solid and no primitive reaches.
      const std::int32_t sign = spec_.mode == OffsetMode::kErode ? -1 : 1;
      std::vector<exact::Edge> edges;
      exact::AppendRegion(region, 1, edges);
      exact::AppendRegion(cover, sign, edges);
      region = exact::Extract(std::move(edges));
    }
    result.contours = detail::RegionToContours(region, result.z);
    if (cfg_.raster) result.bitmap = RasterizeWinding(result.contours, *cfg_.raster);
    return result;
  }

  std::vector<SliceResult> ContourSlab(std::size_t s0, std::vector<Bucket>& buckets) const {
    std::vector<SliceResult> results(buckets.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      while (true) {
        const std::size_t k = cursor.fetch_add(1);
        if (k >= buckets.size()) break;
        try {
          results[k] = ContourOne(s0 + k, buckets[k]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          cursor.store(buckets.size());
        }
        Bucket().segments.swap(buckets[k].segments);
      }
    };
    RunWorkers(worker);
    if (error) std::rethrow_exception(error);
    return results;
  }

  template <typename F>
  void RunWorkers(F& worker) const {
    if (cfg_.workers == 1) {
      worker();
      return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(cfg_.workers - 1);
    for (unsigned i = 1; i < cfg_.workers; ++i) threads.emplace_back(worker);
    worker();
  }

  const IndexedMesh& mesh_;
  const OffsetSpec& spec_;
  const SlicePlan& plan_;
  const EngineConfig& cfg_;
  ChordTolerance eps_;
  bool with_primitives_ = false;
  std::vector<double> heights_;
  std::vector<ZInterval> intervals_;
  std::vector<double> reach_;
};

}  // namespace

void SliceOffset(const IndexedMesh& mesh, const OffsetSpec& spec, const SlicePlan& plan,
                 const EngineConfig& cfg, const SlabConfig& slab, const SliceSink& sink,
                 RunStats* stats) {
  Slicer slicer(mesh, spec, plan, cfg);
  slicer.Run(slab.slices, sink, stats);
}

std::vector<SliceResult> SliceOffset(const IndexedMesh& mesh, const OffsetSpec& spec,
                                     const SlicePlan& plan, const EngineConfig& cfg,
                                     const SlabConfig& slab, RunStats* stats) {
  std::vector<SliceResult> out;
  out.reserve(plan.size());
  SliceOffset(
      mesh, spec, plan, cfg, slab, [&](SliceResult&& r) { out.push_back(std::move(r)); }, stats);
  return out;
}

SliceResult SliceSingle(const IndexedMesh& mesh, const OffsetSpec& spec, double z,
                        const EngineConfig& cfg, RunStats* stats) {
  const SlicePlan plan = SlicePlan::Explicit({z});
  std::vector<SliceResult> results = SliceOffset(mesh, spec, plan, cfg, {}, stats);
  return std::move(results.front());
}

}  // namespace offslice
