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
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "offslice/polygon.h"

namespace offslice {

/// Contours of one slice plane. Solid is where the winding number is > 0.
struct ContourSet {
  double z = 0;
  std::vector<Contour> contours;

  /// Orders by (source id, kind, first point); extraction consumes contours
  /// in this order so the result does not depend on production order.
  void SortCanonical();
  double NetArea() const;
  bool empty() const { return contours.empty(); }
};

/// Base-slice segments that do not close into loops.
class ChainError : public std::runtime_error {
 public:
  ChainError(const std::string& what, std::vector<Vec2> dangling)
      : std::runtime_error(what), dangling_(std::move(dangling)) {}
  const std::vector<Vec2>& dangling() const { return dangling_; }

 private:
  std::vector<Vec2> dangling_;
};

/// Chains segments end to end by crossing-key identity. Orientation follows
/// the segments. Throws ChainError listing dangling endpoints when a chain
/// stays open.
ContourSet SegmentsToContours(std::span<const Segment2> segments, double z = 0);

struct ExtractOptions {
  /// Skips intersection tests between edges of the same convex input
  /// contour. Output is bit-identical either way.
  bool convex_fast_path = false;
};

/// Boundary of {winding > 0}: counter-clockwise outer contours and clockwise
/// holes, kind kFinal, in canonical order (by first point, each contour
/// starting at its lexicographically smallest vertex). Coordinates are
/// snapped to a 1e-7 mm grid before the exact boolean step.
ContourSet WindingExtract(const ContourSet& set, const ExtractOptions& options = {});

/// Incremental extraction: every `batch` new contours are folded into the
/// running result, which is re-entered as a +1 winding region. Exact for
/// inputs whose windings are all non-negative, e.g. dilation primitives.
class ProgressiveAccumulator {
 public:
  explicit ProgressiveAccumulator(std::size_t batch, ExtractOptions options = {});
  ~ProgressiveAccumulator();
  ProgressiveAccumulator(ProgressiveAccumulator&&) noexcept;
  ProgressiveAccumulator& operator=(ProgressiveAccumulator&&) noexcept;

  void Add(const Contour& contour);
  ContourSet Finish(double z = 0);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Same contract as WindingExtract over the concatenated input; requires
/// batch >= 2.
ContourSet AccumulateProgressive(std::span<const Contour> contours, std::size_t batch,
                                 const ExtractOptions& options = {});

/// Extracts halves recursively until at most `leaf` contours remain, then
/// merges results pairwise. Requires leaf >= 2.
ContourSet AccumulateDivideConquer(std::span<const Contour> contours, std::size_t leaf,
                                   const ExtractOptions& options = {});

/// Reverses every contour; order is kept.
ContourSet ReverseContours(ContourSet set);

struct BitmapSpec {
  /// Lower-left corner of pixel (0, 0), mm.
  Vec2 origin;
  double pitch = 1;
  int width = 0;
  int height = 0;
};

/// One bit per pixel; row 0 is the lowest y.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(const BitmapSpec& spec);

  const BitmapSpec& spec() const { return spec_; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }
  bool Get(int x, int y) const {
    return (rows_[static_cast<std::size_t>(y) * stride_ + (x >> 3)] >> (7 - (x & 7))) & 1;
  }
  void Set(int x, int y, bool on);
  std::size_t Count() const;
  Vec2 PixelCenter(int x, int y) const {
    return {spec_.origin.x + (x + 0.5) * spec_.pitch, spec_.origin.y + (y + 0.5) * spec_.pitch};
  }
  /// Packed MSB-first row, stride bytes.
  std::span<const std::uint8_t> Row(int y) const {
    return {rows_.data() + static_cast<std::size_t>(y) * stride_, stride_};
  }

 private:
  BitmapSpec spec_;
  std::size_t stride_ = 0;
  std::vector<std::uint8_t> rows_;
};

/// Scanline fill sampled at pixel centers: a pixel is set when the winding
/// number there is > 0. Throws InputError for a non-positive pitch or an
/// empty grid.
Bitmap RasterizeWinding(const ContourSet& set, const BitmapSpec& spec);
Bitmap RasterizeWinding(std::span<const Contour> contours, const BitmapSpec& spec);

}  // namespace offslice
