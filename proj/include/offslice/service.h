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

#include <map>
#include <memory>
#include <string>

#include "offslice/engine.h"
#include "offslice/mesh.h"

namespace offslice {

struct ServiceOptions {
  /// Engine settings for every request; the chord is the default when a
  /// request does not give one.
  EngineConfig engine;
  /// Static viewer files served under /ui; empty disables the mount.
  std::string ui_dir;
};

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Slice-on-demand handlers over one immutable mesh. Each request recomputes
/// its slice; nothing is cached.
class SliceService {
 public:
  SliceService(IndexedMesh mesh, ServiceOptions options);

  const IndexedMesh& mesh() const { return mesh_; }
  const ServiceOptions& options() const { return options_; }

  /// GET /info
  HttpReply Info() const;
  /// GET /slice?z=&offset=&chord=. The contours array holds the same records
  /// as the JSONL output for that slice.
  HttpReply Slice(const std::map<std::string, std::string>& query) const;

 private:
  IndexedMesh mesh_;
  ServiceOptions options_;
  Box3 bounds_;
};

/// HTTP front end; the service must outlive it.
class HttpServer {
 public:
  explicit HttpServer(const SliceService& service);
  ~HttpServer();

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port; throws std::runtime_error when binding fails.
  int Start(const std::string& host, int port);
  /// Serves on the calling thread until Stop().
  void Listen(const std::string& host, int port);
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace offslice
