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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "offslice/contour.h"

namespace offslice {

/// Shortest form with 9 significant digits; -0 prints as 0.
std::string FormatNumber(double v);

/// {"z":..,"source":"final","points":[[x,y],..],"area":..} per contour, in
/// the order given. No trailing newline.
std::vector<std::string> JsonlRecords(const ContourSet& set);
/// One record per line, each terminated by '\n'. Empty set, empty output.
std::string WriteJsonl(const ContourSet& set);

struct SvgFrame {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;
};

/// One closed path per contour, coordinates in mm with 6 decimals. Without a
/// frame the view box is the contour bounds.
std::string WriteSvg(const ContourSet& set, std::optional<SvgFrame> frame = std::nullopt);

/// 1-bit grayscale PNG, set pixels white, row 0 of the bitmap at the bottom.
std::vector<std::uint8_t> WritePng(const Bitmap& bitmap);

}  // namespace offslice
