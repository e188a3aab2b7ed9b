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

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "offslice/contour.h"

namespace offslice {

Bitmap::Bitmap(const BitmapSpec& spec) : spec_(spec) {
  if (!(spec.pitch > 0) || !std::isfinite(spec.pitch)) {
    throw InputError("bitmap pitch must be positive");
  }
  if (spec.width <= 0 || spec.height <= 0) throw InputError("bitmap has zero size");
  stride_ = (static_cast<std::size_t>(spec.width) + 7) / 8;
  rows_.assign(stride_ * static_cast<std::size_t>(spec.height), 0);
}

void Bitmap::Set(int x, int y, bool on) {
  std::uint8_t& byte = rows_[static_cast<std::size_t>(y) * stride_ + (x >> 3)];
  const std::uint8_t mask = static_cast<std::uint8_t>(0x80u >> (x & 7));
  byte = on ? (byte | mask) : (byte & ~mask);
}

std::size_t Bitmap::Count() const {
  std::size_t n = 0;
  for (std::uint8_t b : rows_) n += std::popcount(b);
  return n;
}

Bitmap RasterizeWinding(const ContourSet& set, const BitmapSpec& spec) {
  return RasterizeWinding(std::span<const Contour>(set.contours), spec);
}

Bitmap RasterizeWinding(std::span<const Contour> contours, const BitmapSpec& spec) {
  Bitmap bmp(spec);
  const double p = spec.pitch;
  const auto center_y = [&](int row) { return spec.origin.y + (row + 0.5) * p; };

  // Crossings per row: (x, +1 upward / -1 downward). Edges are half-open in
  // y so a vertex on a scanline is counted once.
  std::vector<std::vector<std::pair<double, int>>> rows(static_cast<std::size_t>(spec.height));
  for (const Contour& c : contours) {
    const std::size_t n = c.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = c.points[i];
      const Vec2 b = c.points[(i + 1) % n];
      if (a.y == b.y) continue;
      const int dir = b.y > a.y ? 1 : -1;
      const Vec2 lo = dir > 0 ? a : b;
      const Vec2 hi = dir > 0 ? b : a;
      int r0 = static_cast<int>(std::floor((lo.y - spec.origin.y) / p - 0.5)) - 1;
      int r1 = static_cast<int>(std::ceil((hi.y - spec.origin.y) / p - 0.5)) + 1;
      r0 = std::max(r0, 0);
      r1 = std::min(r1, spec.height - 1);
      for (int r = r0; r <= r1; ++r) {
        const double y = center_y(r);
        if (y < lo.y || y >= hi.y) continue;
        const double x = lo.x + (hi.x - lo.x) * ((y - lo.y) / (hi.y - lo.y));
        rows[static_cast<std::size_t>(r)].emplace_back(x, dir);
      }
    }
  }

  for (int r = 0; r < spec.height; ++r) {
    auto& xs = rows[static_cast<std::size_t>(r)];
    if (xs.empty()) continue;
    std::sort(xs.begin(), xs.end());
    // Winding at a pixel center = sum of crossings strictly to its right.
    int total = 0;
    for (const auto& [x, d] : xs) total += d;
    int left = 0;
    std::size_t k = 0;
    for (int col = 0; col < spec.width; ++col) {
      const double x = spec.origin.x + (col + 0.5) * p;
      while (k < xs.size() && xs[k].first <= x) left += xs[k++].second;
      if (total - left > 0) bmp.Set(col, r, true);
    }
  }
  return bmp;
}

}  // namespace offslice
