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

#include "offslice/service.h"

#include <httplib.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <thread>

#include "offslice/serialize.h"

namespace offslice {

namespace {

std::optional<double> ParseNumber(const std::string& s) {
  double v = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

HttpReply Error(int status, const std::string& message) {
  return {status, nlohmann::json{{"error", message}}.dump()};
}

}  // namespace

SliceService::SliceService(IndexedMesh mesh, ServiceOptions options)
    : mesh_(std::move(mesh)), options_(std::move(options)) {
  if (mesh_.empty()) throw InputError("service needs a non-empty mesh");
  bounds_ = MeshBounds(mesh_);
}

HttpReply SliceService::Info() const {
  const EngineConfig& e = options_.engine;
  nlohmann::ordered_json j;
  j["triangles"] = mesh_.num_triangles();
  j["vertices"] = mesh_.num_vertices();
  j["edges"] = mesh_.num_edges();
  j["degenerate"] = mesh_.num_degenerate();
  j["bbox"] = {{"min", {bounds_.min.x, bounds_.min.y, bounds_.min.z}},
               {"max", {bounds_.max.x, bounds_.max.y, bounds_.max.z}}};
  j["defaults"] = {{"chord", e.chord},
                   {"offset", 0.0},
                   {"workers", e.workers},
                   {"strategy", ToString(e.strategy)}};
  return {200, j.dump()};
}

HttpReply SliceService::Slice(const std::map<std::string, std::string>& query) const {
  const auto z_it = query.find("z");
  if (z_it == query.end()) return Error(400, "missing parameter z");
  const std::optional<double> z = ParseNumber(z_it->second);
  if (!z) return Error(400, "z must be a finite number");
  double offset = 0;
  if (auto it = query.find("offset"); it != query.end()) {
    const auto v = ParseNumber(it->second);
    if (!v) return Error(400, "offset must be a finite number");
    offset = *v;
  }
  EngineConfig cfg = options_.engine;
  if (auto it = query.find("chord"); it != query.end()) {
    const auto v = ParseNumber(it->second);
    if (!v || !(*v > 0)) return Error(400, "chord must be a positive number");
    cfg.chord = *v;
  }
  cfg.raster.reset();

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const SliceResult result = SliceSingle(mesh_, OffsetSpec::Signed(offset), *z, cfg);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!result.ok()) return Error(500, result.error);
    std::string body = "{\"z\":" + FormatNumber(*z) + ",\"offset\":" + FormatNumber(offset) +
                       ",\"chord\":" + FormatNumber(cfg.chord) +
                       ",\"timing_ms\":" + FormatNumber(ms) + ",\"contours\":[";
    const std::vector<std::string> records = JsonlRecords(result.contours);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (i) body += ',';
      body += records[i];
    }
    body += "]}";
    return {200, std::move(body)};
  } catch (const InputError& e) {
    return Error(400, e.what());
  } catch (const std::exception& e) {
    return Error(500, e.what());
  }
}

struct HttpServer::Impl {
  const SliceService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(const SliceService& s) : service(s) {
    auto send = [](httplib::Response& res, const HttpReply& reply) {
      res.status = reply.status;
      res.set_content(reply.body, "application/json");
    };
    server.Get("/info", [this, send](const httplib::Request&, httplib::Response& res) {
      send(res, service.Info());
    });
    server.Get("/slice", [this, send](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> query;
      for (const auto& [k, v] : req.params) query.emplace(k, v);
      send(res, service.Slice(query));
    });
    if (!service.options().ui_dir.empty() &&
        !server.set_mount_point("/ui", service.options().ui_dir)) {
      throw InputError("viewer directory not found: " + service.options().ui_dir);
    }
  }
};

HttpServer::HttpServer(const SliceService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::Listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace offslice
