// Copyright 2026 The Chronomark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chronomark/archive.hpp"
#include "chronomark/collection.hpp"
#include "chronomark/discovery.hpp"
#include "chronomark/temporal.hpp"
#include "chronomark/workspace.hpp"

namespace chronomark {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  /// 0 picks an ephemeral port.
  int port = 8080;
  std::filesystem::path workspace;
  /// Fixed clock for deterministic runs; the system clock otherwise.
  std::optional<Instant> now;
};

struct Request {
  std::string method = "GET";
  /// Raw request target: path plus optional query, still percent-encoded.
  std::string target;
  /// Header names are matched case-insensitively.
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;

  std::optional<std::string> header(std::string_view name) const;
};

struct Response {
  int status = 200;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type = "text/plain; charset=utf-8";

  std::optional<std::string> header(std::string_view name) const;
};

/// All service roles behind one request handler, independent of transport:
///
///   GET  /resource/{id}
///   GET  /timegate/{enc(uri_r)}          Accept-Datetime
///   GET  /memento/{stamp}/{uri_r}        uri_r literal or encoded
///   GET  /timemap/{enc(uri_r)}
///   PUT  /content/{id}, GET /content/{id}
///   GET  /annotations?target=&from=&until=
///   POST /harvest
///
/// Seeded timelines and the archive are read once at construction. The
/// content store and the collection take writes; each has its own lock.
class Service {
 public:
  explicit Service(ServiceConfig config);

  Response handle(const Request& req) const;

  Instant now() const;
  const Workspace& workspace() const { return ws_; }

 private:
  Response get_resource(std::string_view id) const;
  Response get_timegate(std::string_view enc_uri_r, const Request& req) const;
  Response get_memento(std::string_view rest) const;
  Response get_timemap(std::string_view enc_uri_r) const;
  Response put_content(std::string_view id, const std::string& body) const;
  Response get_content(std::string_view id) const;
  Response get_annotations(std::string_view query) const;
  Response post_harvest() const;

  std::vector<LinkEntry> memento_links(const MementoRecord& m) const;

  ServiceConfig config_;
  Workspace ws_;
  std::map<std::string, SeededResource> resources_;
  std::optional<Archive> archive_;

  mutable std::mutex content_mu_;
  mutable std::shared_mutex collection_mu_;
  mutable Collection collection_;
};

/// Serves a Service over HTTP/1.1.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 = ephemeral) and returns the bound port.
  /// Throws std::runtime_error.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Returns false on socket errors.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A gate negotiating over HTTP against the TimeGate at
/// `<base>/timegate/...`, following the redirect to the memento. Returned
/// records carry the snapshot time from Content-Datetime and no span.
Gate http_gate(std::string base);

}  // namespace chronomark
