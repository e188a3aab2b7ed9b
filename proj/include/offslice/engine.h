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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "offslice/contour.h"
#include "offslice/mesh.h"

namespace offslice {

/// Ordered slicing heights: uniform z0 + j * tau, or an explicit list.
class SlicePlan {
 public:
  /// Throws InputError unless tau > 0 and count >= 1.
  static SlicePlan Uniform(double z0, double tau, std::size_t count);
  /// Throws InputError unless the heights are finite and strictly increasing.
  static SlicePlan Explicit(std::vector<double> heights);
  /// Uniform plan over [z_min - pad, z_max + pad]:
  /// count = floor((z_max - z_min + 2 pad) / tau + 1e-9) + 1.
  static SlicePlan Covering(double z_min, double z_max, double tau, double pad);

  bool uniform() const { return uniform_; }
  double z0() const { return z0_; }
  double tau() const { return tau_; }
  std::size_t size() const { return uniform_ ? count_ : heights_.size(); }
  double height(std::size_t j) const {
    return uniform_ ? z0_ + static_cast<double>(j) * tau_ : heights_[j];
  }
  std::vector<double> heights() const;
  /// Empty for uniform plans.
  std::span<const double> explicit_heights() const { return heights_; }

 private:
  bool uniform_ = true;
  double z0_ = 0;
  double tau_ = 1;
  std::size_t count_ = 0;
  std::vector<double> heights_;
};

enum class OffsetMode { kDilate, kErode, kVariable };

const char* ToString(OffsetMode mode);

struct OffsetSpec {
  OffsetMode mode = OffsetMode::kDilate;
  double radius = 0;
  /// Per welded vertex, variable mode only.
  std::vector<double> vertex_radii;

  static OffsetSpec Dilate(double r) { return {OffsetMode::kDilate, r, {}}; }
  static OffsetSpec Erode(double r) { return {OffsetMode::kErode, r, {}}; }
  static OffsetSpec Variable(std::vector<double> radii) {
    return {OffsetMode::kVariable, 0, std::move(radii)};
  }
  /// Positive dilates, negative erodes.
  static OffsetSpec Signed(double offset) {
    return offset < 0 ? Erode(-offset) : Dilate(offset);
  }

  double MaxRadius() const;
};

struct SlabConfig {
  /// Slices per slab; 0 means all slices in one slab.
  std::size_t slices = 0;
};

enum class AccumulationStrategy { kDirect, kProgressive, kDivideConquer };

const char* ToString(AccumulationStrategy strategy);

struct EngineConfig {
  unsigned workers = 1;
  double chord = 0.01;
  AccumulationStrategy strategy = AccumulationStrategy::kProgressive;
  std::size_t progressive_batch = 256;
  std::size_t leaf_size = 64;
  bool convex_fast_path = false;
  /// When set, every slice is also rasterized onto this grid.
  std::optional<BitmapSpec> raster;
};

struct SliceResult {
  std::size_t index = 0;
  double z = 0;
  ContourSet contours;
  /// Set when the base section could not be chained; contours are empty then.
  std::string error;
  std::optional<Bitmap> bitmap;

  bool ok() const { return error.empty(); }
};

struct RunStats {
  double generate_ms = 0;
  double contour_ms = 0;
  std::size_t triangle_visits = 0;
  std::size_t segments = 0;
  std::size_t primitive_contours = 0;
  std::size_t slabs = 0;
};

/// Closed index range [first, last]; empty when first > last.
struct SliceRange {
  std::size_t first = 1;
  std::size_t last = 0;

  bool empty() const { return first > last; }
  std::size_t size() const { return empty() ? 0 : last - first + 1; }
};

/// Smallest i with heights[i] >= z, or heights.size().
std::size_t BisectHeight(std::span<const double> heights, double z);

/// floor((z - z0) / tau), the direct rounding estimate of the first uniform
/// slice at or above z. May be off by one where z0 + j * tau rounds.
long long UniformSliceEstimate(double z, const SlicePlan& plan);

/// All slices whose height lies in [z_min - r_max, z_max + r_max], compared
/// against the same height values the engine slices at.
SliceRange AffectedSlices(ZInterval interval, double r_max, const SlicePlan& plan);

using SliceSink = std::function<void(SliceResult&&)>;

/// Slices the offset solid. Results reach `sink` in slice order, one slab at a
/// time. Output does not depend on the worker count or the slab size. Throws
/// InputError for invalid parameters and GeometryError from primitives.
void SliceOffset(const IndexedMesh& mesh, const OffsetSpec& spec, const SlicePlan& plan,
                 const EngineConfig& cfg, const SlabConfig& slab, const SliceSink& sink,
                 RunStats* stats = nullptr);

std::vector<SliceResult> SliceOffset(const IndexedMesh& mesh, const OffsetSpec& spec,
                                     const SlicePlan& plan, const EngineConfig& cfg,
                                     const SlabConfig& slab = {}, RunStats* stats = nullptr);

/// One plane only; triangles outside [z - r, z + r] are skipped.
SliceResult SliceSingle(const IndexedMesh& mesh, const OffsetSpec& spec, double z,
                        const EngineConfig& cfg, RunStats* stats = nullptr);

}  // namespace offslice
