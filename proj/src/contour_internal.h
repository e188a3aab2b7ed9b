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
#include <span>

#include "exact_region.h"
#include "offslice/contour.h"

namespace offslice::detail {

enum class Accumulation { kDirect, kProgressive, kDivideConquer };

/// Contours in the given order, each weighted by `weight`.
exact::Region ExtractRegion(std::span<const Contour> contours, std::int32_t weight,
                            const ExtractOptions& options);

exact::Region AccumulateRegion(std::span<const Contour> contours, Accumulation strategy,
                               std::size_t batch, const ExtractOptions& options);

ContourSet RegionToContours(const exact::Region& region, double z);

}  // namespace offslice::detail
