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
#include <map>
#include <numeric>

#include "contour_internal.h"

namespace offslice {

namespace {

bool CanonicalLess(const Contour& a, const Contour& b) {
  if (a.source != b.source) return a.source < b.source;
  if (a.kind != b.kind) return a.kind < b.kind;
  const Vec2 pa = a.points.empty() ? Vec2{} : a.points.front();
  const Vec2 pb = b.points.empty() ? Vec2{} : b.points.front();
  if (pa.x != pb.x) return pa.x < pb.x;
  return pa.y < pb.y;
}

std::vector<Contour> SortedCopy(std::span<const Contour> contours) {
  std::vector<Contour> sorted(contours.begin(), contours.end());
  std::stable_sort(sorted.begin(), sorted.end(), CanonicalLess);
  return sorted;
}

void AppendContours(std::span<const Contour> contours, std::int32_t weight,
                    std::vector<exact::Edge>& edges, std::int32_t& group) {
  for (const Contour& c : contours) {
    if (exact::AppendPolygon(c.points, weight, group, edges)) ++group;
  }
}

}  // namespace

void ContourSet::SortCanonical() { std::stable_sort(contours.begin(), contours.end(), CanonicalLess); }

double ContourSet::NetArea() const {
  double total = 0;
  for (const Contour& c : contours) total += c.area;
  return total;
}

ContourSet SegmentsToContours(std::span<const Segment2> segments, double z) {
  // Every key must be entered as often as it is left.
  std::map<CrossingKey, std::vector<std::size_t>> leaving;
  std::map<CrossingKey, int> balance;
  std::map<CrossingKey, Vec2> where;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    leaving[segments[i].from_key].push_back(i);
    --balance[segments[i].from_key];
    ++balance[segments[i].to_key];
    where.try_emplace(segments[i].from_key, segments[i].from);
    where.try_emplace(segments[i].to_key, segments[i].to);
  }
  std::vector<Vec2> dangling;
  for (const auto& [key, b] : balance) {
    for (int k = 0; k < std::abs(b); ++k) dangling.push_back(where[key]);
  }
  if (!dangling.empty()) {
    const std::string what =
        "open contour chain: " + std::to_string(dangling.size()) + " dangling endpoints";
    throw ChainError(what, std::move(dangling));
  }

  ContourSet set;
  set.z = z;
  std::vector<bool> used(segments.size(), false);
  std::map<CrossingKey, std::size_t> cursor;
  for (std::size_t first = 0; first < segments.size(); ++first) {
    if (used[first]) continue;
    std::vector<Vec2> pts;
    std::size_t cur = first;
    while (true) {
      used[cur] = true;
      pts.push_back(segments[cur].from);
      const CrossingKey to = segments[cur].to_key;
      if (to == segments[first].from_key) break;
      const auto& candidates = leaving[to];
      std::size_t& c = cursor[to];
      while (c < candidates.size() && used[candidates[c]]) ++c;
      if (c == candidates.size()) {
        throw ChainError("contour chain could not be closed", {segments[cur].to});
      }
      cur = candidates[c];
    }
    Contour contour(std::move(pts), kNoSource, PrimitiveKind::kBase);
    if (contour.points.size() >= 3 && contour.area != 0) set.contours.push_back(std::move(contour));
  }
  return set;
}

namespace detail {

exact::Region ExtractRegion(std::span<const Contour> contours, std::int32_t weight,
                            const ExtractOptions& options) {
  std::vector<exact::Edge> edges;
  std::int32_t group = 0;
  AppendContours(contours, weight, edges, group);
  return exact::Extract(std::move(edges), options.convex_fast_path);
}

namespace {

exact::Region DivideConquer(std::span<const Contour> contours, std::size_t leaf,
                            const ExtractOptions& options) {
  if (contours.size() <= leaf) return ExtractRegion(contours, 1, options);
  const std::size_t half = contours.size() / 2;
  const exact::Region left = DivideConquer(contours.first(half), leaf, options);
  const exact::Region right = DivideConquer(contours.subspan(half), leaf, options);
  std::vector<exact::Edge> edges;
  exact::AppendRegion(left, 1, edges);
  exact::AppendRegion(right, 1, edges);
  return exact::Extract(std::move(edges));
}

}  // namespace

exact::Region AccumulateRegion(std::span<const Contour> contours, Accumulation strategy,
                               std::size_t batch, const ExtractOptions& options) {
  switch (strategy) {
    case Accumulation::kDirect:
      return ExtractRegion(contours, 1, options);
    case Accumulation::kDivideConquer:
      if (batch < 2) throw InputError("divide-and-conquer leaf size must be at least 2");
      return DivideConquer(contours, batch, options);
    case Accumulation::kProgressive: {
      if (batch < 2) throw InputError("progressive batch size must be at least 2");
      exact::Region partial;
      for (std::size_t start = 0; start < contours.size(); start += batch) {
        std::vector<exact::Edge> edges;
        exact::AppendRegion(partial, 1, edges);
        std::int32_t group = 0;
        AppendContours(contours.subspan(start, std::min(batch, contours.size() - start)), 1, edges,
                       group);
        partial = exact::Extract(std::move(edges), options.convex_fast_path);
      }
      return partial;
    }
  }
  return {};
}

ContourSet RegionToContours(const exact::Region& region, double z) {
  ContourSet set;
  set.z = z;
  set.contours.reserve(region.loops.size());
  for (const exact::Loop& loop : region.loops) {
    set.contours.emplace_back(exact::LoopToMillimeters(loop), kNoSource, PrimitiveKind::kFinal);
  }
  return set;
}

}  // namespace detail

ContourSet WindingExtract(const ContourSet& set, const ExtractOptions& options) {
  const std::vector<Contour> sorted = SortedCopy(set.contours);
  return detail::RegionToContours(detail::ExtractRegion(sorted, 1, options), set.z);
}

struct ProgressiveAccumulator::State {
  std::size_t batch;
  ExtractOptions options;
  exact::Region partial;
  std::vector<Contour> pending;

  void Fold() {
    std::vector<exact::Edge> edges;
    exact::AppendRegion(partial, 1, edges);
    std::int32_t group = 0;
    AppendContours(pending, 1, edges, group);
    partial = exact::Extract(std::move(edges), options.convex_fast_path);
    pending.clear();
  }
};

ProgressiveAccumulator::ProgressiveAccumulator(std::size_t batch, ExtractOptions options)
    : state_(std::make_unique<State>()) {
  if (batch < 2) throw InputError("progressive batch size must be at least 2");
  state_->batch = batch;
  state_->options = options;
}

ProgressiveAccumulator::~ProgressiveAccumulator() = default;
ProgressiveAccumulator::ProgressiveAccumulator(ProgressiveAccumulator&&) noexcept = default;
ProgressiveAccumulator& ProgressiveAccumulator::operator=(ProgressiveAccumulator&&) noexcept = default;

void ProgressiveAccumulator::Add(const Contour& contour) {
  state_->pending.push_back(contour);
  if (state_->pending.size() >= state_->batch) state_->Fold();
}

ContourSet ProgressiveAccumulator::Finish(double z) {
  if (!state_->pending.empty()) state_->Fold();
  return detail::RegionToContours(state_->partial, z);
}

ContourSet AccumulateProgressive(std::span<const Contour> contours, std::size_t batch,
                                 const ExtractOptions& options) {
  const std::vector<Contour> sorted = SortedCopy(contours);
  return detail::RegionToContours(
      detail::AccumulateRegion(sorted, detail::Accumulation::kProgressive, batch, options), 0);
}

ContourSet AccumulateDivideConquer(std::span<const Contour> contours, std::size_t leaf,
                                   const ExtractOptions& options) {
  const std::vector<Contour> sorted = SortedCopy(contours);
  return detail::RegionToContours(
      detail::AccumulateRegion(sorted, detail::Accumulation::kDivideConquer, leaf, options), 0);
}

ContourSet ReverseContours(ContourSet set) {
  for (Contour& c : set.contours) c.Reverse();
  return set;
}

}  // namespace offslice
