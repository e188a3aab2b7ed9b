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

#include "offslice/serialize.h"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace offslice {

std::string FormatNumber(double v) {
  if (v == 0) v = 0;  // folds -0
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in output");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::vector<std::string> JsonlRecords(const ContourSet& set) {
  std::vector<std::string> lines;
  lines.reserve(set.contours.size());
  const std::string z = FormatNumber(set.z);
  for (const Contour& c : set.contours) {
    std::string s = "{\"z\":" + z + ",\"source\":\"final\",\"points\":[";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (i) s += ',';
      s += '[';
      s += FormatNumber(c.points[i].x);
      s += ',';
      s += FormatNumber(c.points[i].y);
      s += ']';
    }
    s += "],\"area\":" + FormatNumber(c.area) + "}";
    lines.push_back(std::move(s));
  }
  return lines;
}

std::string WriteJsonl(const ContourSet& set) {
  std::string out;
  for (const std::string& line : JsonlRecords(set)) {
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

std::string WriteSvg(const ContourSet& set, std::optional<SvgFrame> frame) {
  if (!frame) {
    SvgFrame f{0, 0, 0, 0};
    bool first = true;
    for (const Contour& c : set.contours) {
      for (const Vec2& p : c.points) {
        if (first) {
          f = {p.x, p.y, p.x, p.y};
          first = false;
        }
        f.x0 = std::min(f.x0, p.x);
        f.y0 = std::min(f.y0, p.y);
        f.x1 = std::max(f.x1, p.x);
        f.y1 = std::max(f.y1, p.y);
      }
    }
    frame = f;
  }
  const double w = std::max(frame->x1 - frame->x0, 1e-6);
  const double h = std::max(frame->y1 - frame->y0, 1e-6);
  // y up: the group flips about the x axis, so the view box spans -y1..-y0.
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Fixed6(w) + "mm\" height=\"" +
       Fixed6(h) + "mm\" viewBox=\"" + Fixed6(frame->x0) + " " + Fixed6(-frame->y1) + " " +
       Fixed6(w) + " " + Fixed6(h) + "\">\n";
  s += "<g transform=\"scale(1,-1)\" fill=\"black\" fill-rule=\"nonzero\" stroke=\"none\" "
       "data-z=\"" + FormatNumber(set.z) + "\">\n";
  for (const Contour& c : set.contours) {
    s += "<path d=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      s += i == 0 ? "M" : " L";
      s += Fixed6(c.points[i].x);
      s += ',';
      s += Fixed6(c.points[i].y);
    }
    s += " Z\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::vector<std::uint8_t> WritePng(const Bitmap& bitmap) {
  if (bitmap.width() <= 0 || bitmap.height() <= 0) throw InputError("empty bitmap");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct failed");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        buf->insert(buf->end(), data, data + len);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(bitmap.width()),
               static_cast<png_uint_32>(bitmap.height()), 1, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = bitmap.height() - 1; y >= 0; --y) {
    std::vector<std::uint8_t> row(bitmap.Row(y).begin(), bitmap.Row(y).end());
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace offslice
