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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace offslice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBadStl = 2;
inline constexpr int kExitChain = 3;

struct RunConfig {
  std::string input;
  /// > 0 dilates, < 0 erodes, 0 plain slicing.
  double offset = 0;
  /// "dilate" or "erode" applies |offset| in that direction.
  std::string mode;
  /// One radius per welded vertex; switches to variable mode.
  std::string radius_file;
  std::optional<double> thickness;
  std::string heights_file;
  double chord = 0.01;
  unsigned threads = 1;
  /// Slices per slab, 0 for all.
  std::size_t slab = 0;
  std::string out = "out";
  std::vector<std::string> formats = {"svg", "jsonl"};
  /// Raster pixel pitch in mm, for png output.
  double pitch = 0.05;
  std::string strategy = "progressive";
  std::size_t batch = 256;
  std::size_t leaf = 64;
  bool convex_fast_path = false;
  bool serve = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui_dir;
};

/// Parses flags. On --help or a parse error, returns nullopt and sets `exit`.
std::optional<RunConfig> ParseArgs(int argc, const char* const* argv, int& exit,
                                   std::ostream& out, std::ostream& err);

/// Runs one configuration; diagnostics go to `err` as a single line.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

int Main(int argc, const char* const* argv);

}  // namespace offslice::cli
