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

#include "offslice/cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "offslice/engine.h"
#include "offslice/serialize.h"
#include "offslice/service.h"

namespace offslice::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Whitespace-separated reals; anything else is an error.
std::vector<double> ReadReals(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot read ") + what + " file " + path);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw InputError(std::string("bad number '") + token + "' in " + what + " file " + path);
    }
    values.push_back(v);
  }
  return values;
}

void WriteFile(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string SliceName(std::size_t index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "slice_%05zu.%s", index, ext);
  return buf;
}

AccumulationStrategy ParseStrategy(const std::string& s) {
  if (s == "progressive") return AccumulationStrategy::kProgressive;
  if (s == "divide-conquer") return AccumulationStrategy::kDivideConquer;
  if (s == "direct") return AccumulationStrategy::kDirect;
  throw InputError("unknown strategy " + s);
}

}  // namespace

std::optional<RunConfig> ParseArgs(int argc, const char* const* argv, int& exit,
                                   std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Slices dilated or eroded triangle meshes"};
  app.add_option("--input", c.input, "STL file")->required();
  app.add_option("--offset", c.offset, "offset radius in mm; > 0 dilates, < 0 erodes");
  app.add_option("--mode", c.mode, "force dilate or erode with |offset|")
      ->check(CLI::IsMember({"dilate", "erode"}));
  app.add_option("--radius-file", c.radius_file, "per-vertex radii (variable offset)");
  auto* thickness = app.add_option("--thickness", c.thickness, "uniform slice thickness in mm");
  auto* heights = app.add_option("--heights", c.heights_file, "file of ascending slice heights");
  thickness->excludes(heights);
  app.add_option("--chord", c.chord, "chord error in mm");
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--slab", c.slab, "slices per slab, 0 for all");
  app.add_option("--out", c.out, "output directory");
  app.add_option("--formats", c.formats, "svg, jsonl, png")
      ->delimiter(',')
      ->check(CLI::IsMember({"svg", "jsonl", "png"}));
  app.add_option("--pitch", c.pitch, "raster pixel size in mm");
  app.add_option("--strategy", c.strategy, "progressive, divide-conquer or direct")
      ->check(CLI::IsMember({"progressive", "divide-conquer", "direct"}));
  app.add_option("--batch", c.batch, "progressive batch size");
  app.add_option("--leaf", c.leaf, "divide-and-conquer leaf size");
  app.add_flag("--convex-fast-path", c.convex_fast_path, "skip same-primitive edge pairs");
  app.add_flag("--serve", c.serve, "start the slice service instead of slicing");
  app.add_option("--host", c.host, "service address");
  app.add_option("--port", c.port, "service port");
  app.add_option("--ui-dir", c.ui_dir, "viewer files served under /ui");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit = app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    return std::nullopt;
  }
  return c;
}

int Run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto t_start = Clock::now();
  // Configuration checks come first so a bad run leaves nothing behind.
  try {
    if (!(c.chord > 0)) throw InputError("--chord must be positive");
    if (c.threads < 1) throw InputError("--threads must be at least 1");
    if (!std::isfinite(c.offset)) throw InputError("--offset must be finite");
    if (!c.serve && !c.thickness && c.heights_file.empty()) {
      throw InputError("one of --thickness or --heights is required");
    }
    if (c.thickness && !(*c.thickness > 0)) throw InputError("--thickness must be positive");
    if (!(c.pitch > 0)) throw InputError("--pitch must be positive");
    if (!c.radius_file.empty() && !c.mode.empty()) {
      throw InputError("--mode does not apply to a radius file");
    }
    ParseStrategy(c.strategy);
    if (!fs::is_regular_file(c.input)) throw InputError("cannot read input " + c.input);
  } catch (const InputError& e) {
    err << "offslice: " << e.what() << "\n";
    return kExitConfig;
  }

  IndexedMesh mesh;
  const auto t_load = Clock::now();
  try {
    mesh = LoadStlFile(c.input);
  } catch (const std::exception& e) {
    err << "offslice: " << c.input << ": " << e.what() << "\n";
    return kExitBadStl;
  }
  const double load_ms = Ms(t_load);

  try {
    OffsetSpec spec = OffsetSpec::Signed(c.offset);
    if (c.mode == "dilate") spec = OffsetSpec::Dilate(std::abs(c.offset));
    if (c.mode == "erode") spec = OffsetSpec::Erode(std::abs(c.offset));
    if (!c.radius_file.empty()) {
      std::vector<double> radii = ReadReals(c.radius_file, "radius");
      if (radii.size() != mesh.num_vertices()) {
        throw InputError("radius file has " + std::to_string(radii.size()) + " values, mesh has " +
                         std::to_string(mesh.num_vertices()) + " vertices");
      }
      spec = OffsetSpec::Variable(std::move(radii));
    }

    EngineConfig cfg;
    cfg.workers = c.threads;
    cfg.chord = c.chord;
    cfg.strategy = ParseStrategy(c.strategy);
    cfg.progressive_batch = c.batch;
    cfg.leaf_size = c.leaf;
    cfg.convex_fast_path = c.convex_fast_path;

    if (c.serve) {
      ServiceOptions options;
      options.engine = cfg;
      options.ui_dir = c.ui_dir;
      SliceService service(std::move(mesh), options);
      HttpServer server(service);
      out << "offslice: serving " << c.input << " on http://" << c.host << ":" << c.port << "\n"
          << std::flush;
      server.Listen(c.host, c.port);
      return kExitOk;
    }

    const Box3 box = MeshBounds(mesh);
    const double pad = spec.MaxRadius();
    const SlicePlan plan = c.thickness
                               ? SlicePlan::Covering(box.min.z, box.max.z, *c.thickness, pad)
                               : SlicePlan::Explicit(ReadReals(c.heights_file, "heights"));

    const auto wants = [&](const char* f) {
      return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end();
    };
    const double margin = pad + 2 * c.pitch;
    const SvgFrame frame{box.min.x - margin, box.min.y - margin, box.max.x + margin,
                         box.max.y + margin};
    if (wants("png")) {
      const double w = frame.x1 - frame.x0;
      const double h = frame.y1 - frame.y0;
      if (w / c.pitch > 32768 || h / c.pitch > 32768) throw InputError("--pitch too small");
      cfg.raster = BitmapSpec{{frame.x0, frame.y0},
                              c.pitch,
                              static_cast<int>(std::ceil(w / c.pitch)),
                              static_cast<int>(std::ceil(h / c.pitch))};
    }

    fs::create_directories(c.out);
    nlohmann::ordered_json slices = nlohmann::json::array();
    std::vector<std::size_t> failed;
    double write_ms = 0;
    RunStats stats;
    SliceOffset(
        mesh, spec, plan, cfg, SlabConfig{c.slab},
        [&](SliceResult&& r) {
          const auto t0 = Clock::now();
          nlohmann::ordered_json entry;
          entry["index"] = r.index;
          entry["z"] = r.z;
          entry["contours"] = r.contours.contours.size();
          entry["area"] = r.contours.NetArea();
          if (!r.ok()) {
            entry["error"] = r.error;
            failed.push_back(r.index);
          }
          if (wants("jsonl")) {
            const std::string s = WriteJsonl(r.contours);
            WriteFile(fs::path(c.out) / SliceName(r.index, "jsonl"), s.data(), s.size());
          }
          if (wants("svg")) {
            const std::string s = WriteSvg(r.contours, frame);
            WriteFile(fs::path(c.out) / SliceName(r.index, "svg"), s.data(), s.size());
          }
          if (wants("png") && r.bitmap) {
            const std::vector<std::uint8_t> png = WritePng(*r.bitmap);
            WriteFile(fs::path(c.out) / SliceName(r.index, "png"), png.data(), png.size());
          }
          slices.push_back(std::move(entry));
          write_ms += Ms(t0);
        },
        &stats);

    nlohmann::ordered_json m;
    m["input"] = c.input;
    m["mode"] = ToString(spec.mode);
    m["offset"] = c.offset;
    m["chord"] = c.chord;
    m["threads"] = c.threads;
    m["slab"] = c.slab;
    m["strategy"] = c.strategy;
    m["formats"] = c.formats;
    m["mesh"] = {{"triangles", mesh.num_triangles()},
                 {"vertices", mesh.num_vertices()},
                 {"edges", mesh.num_edges()},
                 {"degenerate", mesh.num_degenerate()},
                 {"bbox",
                  {{"min", {box.min.x, box.min.y, box.min.z}},
                   {"max", {box.max.x, box.max.y, box.max.z}}}}};
    m["heights"] = plan.heights();
    m["slice_count"] = plan.size();
    m["slices"] = std::move(slices);
    m["failed_slices"] = failed;
    m["timing_ms"] = {{"load", load_ms},
                      {"generate", stats.generate_ms},
                      {"contour", stats.contour_ms},
                      {"write", write_ms},
                      {"total", Ms(t_start)}};
    const std::string manifest = m.dump(2) + "\n";
    WriteFile(fs::path(c.out) / "manifest.json", manifest.data(), manifest.size());

    if (!failed.empty()) {
      err << "offslice: " << failed.size() << " slice(s) failed to chain (first: slice "
          << failed.front() << "); see manifest.json\n";
      return kExitChain;
    }
    out << "offslice: wrote " << plan.size() << " slices to " << c.out << "\n";
    return kExitOk;
  } catch (const InputError& e) {
    err << "offslice: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "offslice: " << e.what() << "\n";
    return kExitConfig;
  }
}

int Main(int argc, const char* const* argv) {
  int exit = kExitOk;
  const std::optional<RunConfig> config = ParseArgs(argc, argv, exit, std::cout, std::cerr);
  if (!config) return exit;
  return Run(*config, std::cout, std::cerr);
}

}  // namespace offslice::cli
