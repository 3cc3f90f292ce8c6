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

#include "chronomark/service.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <stdexcept>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"
#include "httplib.h"

namespace chronomark {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::optional<std::string> find_header(
    const std::vector<std::pair<std::string, std::string>>& headers,
    std::string_view name) {
  for (const auto& [k, v] : headers)
    if (iequals(k, name)) return v;
  return std::nullopt;
}

Response text(int status, std::string body) {
  Response r;
  r.status = status;
  r.body = std::move(body);
  return r;
}

Response failure(int status, const Error& e) {
  return text(status, std::string(e.kind()) + ": " + e.what() + "\n");
}

Response failure(int status, std::string_view kind, const std::string& what) {
  return text(status, std::string(kind) + ": " + what + "\n");
}

std::string query_decode(std::string_view s) {
  std::string plus(s);
  std::replace(plus.begin(), plus.end(), '+', ' ');
  return uri::decode_component(plus);
}

std::map<std::string, std::string> parse_query(std::string_view q) {
  std::map<std::string, std::string> out;
  while (!q.empty()) {
    const auto amp = q.find('&');
    const auto pair = q.substr(0, amp);
    q = amp == std::string_view::npos ? std::string_view{} : q.substr(amp + 1);
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    auto key = query_decode(pair.substr(0, eq));
    auto value = eq == std::string_view::npos ? std::string{}
                                              : query_decode(pair.substr(eq + 1));
    out.emplace(std::move(key), std::move(value));
  }
  return out;
}

LinkEntry dated(std::string target, std::string rel, Instant t) {
  return {std::move(target), std::move(rel), {{"datetime", format_http_datetime(t)}}};
}

}  // namespace

std::optional<std::string> Request::header(std::string_view name) const {
  return find_header(headers, name);
}

std::optional<std::string> Response::header(std::string_view name) const {
  return find_header(headers, name);
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      ws_(config_.workspace),
      resources_(ws_.resources()),
      archive_(ws_.archive()),
      collection_(ws_.collection()) {}

Instant Service::now() const {
  if (config_.now) return *config_.now;
  const auto s = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::system_clock::now().time_since_epoch());
  return Instant{s.count()};
}

Response Service::handle(const Request& req) const {
  const std::string_view target = req.target;
  const auto qpos = target.find('?');
  const auto path = target.substr(0, qpos);
  const auto query =
      qpos == std::string_view::npos ? std::string_view{} : target.substr(qpos + 1);

  const auto route = [&](std::string_view prefix, std::string_view& rest) {
    if (!path.starts_with(prefix)) return false;
    rest = path.substr(prefix.size());
    return true;
  };
  const bool get = req.method == "GET";

  try {
    std::string_view rest;
    // The memento route keeps any '?' since it may belong to the embedded URI.
    if (target.starts_with("/memento/"))
      return get ? get_memento(target.substr(9)) : text(405, "method not allowed\n");
    if (route("/resource/", rest))
      return get ? get_resource(rest) : text(405, "method not allowed\n");
    if (route("/timegate/", rest))
      return get ? get_timegate(rest, req) : text(405, "method not allowed\n");
    if (route("/timemap/", rest))
      return get ? get_timemap(rest) : text(405, "method not allowed\n");
    if (route("/content/", rest)) {
      if (get) return get_content(rest);
      if (req.method == "PUT") return put_content(rest, req.body);
      return text(405, "method not allowed\n");
    }
    if (path == "/annotations")
      return get ? get_annotations(query) : text(405, "method not allowed\n");
    if (path == "/harvest")
      return req.method == "POST" ? post_harvest() : text(405, "method not allowed\n");
    return text(404, "no such route: " + std::string(path) + "\n");
  } catch (const Error& e) {
    return failure(500, e);
  } catch (const std::exception& e) {
    return failure(500, "InternalError", e.what());
  }
}

Response Service::get_resource(std::string_view id) const {
  const auto it = resources_.find(uri::decode_component(id));
  if (it == resources_.end())
    return failure(404, "UnknownResource", "no seeded resource '" + std::string(id) + "'");
  const auto& tl = it->second.timeline;
  try {
    Response r = text(200, rep_at(tl, now()));
    r.headers.emplace_back(
        "Link", emit_link_header({{ws_.timegate_uri(tl.uri_r), "timegate", {}}}));
    return r;
  } catch (const BeforeCreation& e) {
    return failure(404, e);
  }
}

std::vector<LinkEntry> Service::memento_links(const MementoRecord& m) const {
  std::vector<LinkEntry> links{{m.uri_r, "original", {}},
                               {ws_.timegate_uri(m.uri_r), "timegate", {}},
                               {ws_.timemap_uri(m.uri_r), "timemap", {}}};
  const auto n = adjacent(*archive_, m);
  if (n.prev) links.push_back(dated(n.prev->uri_m, "prev-memento", n.prev->snapshot_time));
  if (n.next) links.push_back(dated(n.next->uri_m, "next-memento", n.next->snapshot_time));
  return links;
}

Response Service::get_timegate(std::string_view enc_uri_r, const Request& req) const {
  const auto uri_r = uri::decode_component(enc_uri_r);
  if (!archive_ || !archive_->has(uri_r))
    return failure(404, "UnknownResource",
                   "the archive holds no mementos of <" + uri_r +
                       ">, so there is nothing to negotiate");
  Instant t = now();
  if (const auto accept = req.header("Accept-Datetime")) {
    try {
      t = parse_http_datetime(*accept);
    } catch (const MalformedDatetime& e) {
      return failure(400, e);
    }
  }
  const auto& m = resolve_timegate(*archive_, uri_r, t);
  auto links = memento_links(m);
  links.insert(links.begin() + 3, dated(m.uri_m, "memento", m.snapshot_time));
  Response r = text(302, "");
  r.headers.emplace_back("Location", m.uri_m);
  r.headers.emplace_back("Vary", "accept-datetime");
  r.headers.emplace_back("Link", emit_link_header(links));
  return r;
}

Response Service::get_memento(std::string_view rest) const {
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos)
    return failure(404, "UnknownMemento", "missing original resource in memento path");
  Instant t;
  try {
    t = parse_archive_timestamp(rest.substr(0, slash));
  } catch (const MalformedTimestamp& e) {
    return failure(400, e);
  }
  const auto raw = rest.substr(slash + 1);
  const std::string uri_r = uri::is_absolute(raw) ? std::string(raw)
                                                  : uri::decode_component(raw);
  if (archive_ && archive_->has(uri_r)) {
    for (const auto& m : archive_->mementos(uri_r)) {
      if (m.snapshot_time != t) continue;
      Response r = text(200, m.body);
      r.headers.emplace_back("Content-Datetime", format_http_datetime(m.snapshot_time));
      r.headers.emplace_back("Link", emit_link_header(memento_links(m)));
      return r;
    }
  }
  return failure(404, "UnknownMemento",
                 "no memento of <" + uri_r + "> at " + format_archive_timestamp(t));
}

Response Service::get_timemap(std::string_view enc_uri_r) const {
  const auto uri_r = uri::decode_component(enc_uri_r);
  if (!archive_ || !archive_->has(uri_r))
    return failure(404, "UnknownResource", "no mementos of <" + uri_r + ">");
  return text(200, serialize_triples(timemap(*archive_, uri_r)));
}

Response Service::put_content(std::string_view id, const std::string& body) const {
  const auto key = uri::decode_component(id);
  if (key.empty()) return failure(400, "WorkspaceError", "empty content id");
  bool created = false;
  {
    std::lock_guard lock(content_mu_);
    try {
      created = ws_.content().put(key, body);
    } catch (const MalformedTranscription& e) {
      return failure(400, e);
    }
  }
  const auto location = ws_.content_uri(key);
  Response r = text(created ? 201 : 200, location + "\n");
  r.headers.emplace_back("Location", location);
  return r;
}

Response Service::get_content(std::string_view id) const {
  const auto key = uri::decode_component(id);
  auto body = ws_.content().get(key);
  if (!body) return failure(404, "UnknownResource", "no content '" + key + "'");
  return text(200, std::move(*body));
}

Response Service::get_annotations(std::string_view query) const {
  const auto q = parse_query(query);
  const auto target = q.find("target");
  if (target == q.end() || target->second.empty())
    return failure(400, "BadRequest", "missing target parameter");
  const auto from = q.find("from");
  const auto until = q.find("until");
  if ((from == q.end()) != (until == q.end()))
    return failure(400, "BadRequest", "from and until must be given together");
  std::optional<TimeInterval> interval;
  if (from != q.end()) {
    try {
      interval = TimeInterval::make(parse_http_datetime(from->second),
                                    parse_http_datetime(until->second));
    } catch (const Error& e) {
      return failure(400, e);
    }
  }
  std::string body;
  {
    std::shared_lock lock(collection_mu_);
    for (const auto& e : collection_.search(target->second, interval))
      body += e.uri_trn + "\n";
  }
  return text(200, std::move(body));
}

Response Service::post_harvest() const {
  std::unique_lock lock(collection_mu_);
  const auto failures = collection_.harvest(ws_.feed(), ws_.local_fetcher());
  ws_.save_collection(collection_);
  std::string body = "entries=" + std::to_string(collection_.size()) + "\n";
  for (const auto& f : failures)
    body += "failure=" + f.uri + " " + f.kind + ": " + f.message + "\n";
  return text(200, std::move(body));
}

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;

  explicit Impl(const Service& s) : service(s) {
    const auto handler = [this](const httplib::Request& in, httplib::Response& out) {
      Request req;
      req.method = in.method;
      req.target = in.target;
      req.body = in.body;
      for (const auto& [k, v] : in.headers) req.headers.emplace_back(k, v);
      const auto res = service.handle(req);
      out.status = res.status;
      for (const auto& [k, v] : res.headers) out.set_header(k, v);
      out.set_content(res.body, res.content_type);
    };
    const char* any = R"([\s\S]*)";
    server.Get(any, handler);
    server.Put(any, handler);
    server.Post(any, handler);
    server.Delete(any, handler);
    server.Patch(any, handler);
  }
};

HttpServer::HttpServer(const Service& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

namespace {

// Splits an absolute http URL into origin and path+query.
std::pair<std::string, std::string> split_url(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos)
    throw FetchFailed("not an http URL: " + std::string(url));
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

httplib::Result fetch(const std::string& url, const httplib::Headers& headers) {
  const auto [origin, path] = split_url(url);
  httplib::Client client(origin);
  client.set_url_encode(false);
  auto res = client.Get(path, headers);
  if (!res)
    throw FetchFailed("GET " + url + ": " + httplib::to_string(res.error()));
  return res;
}

}  // namespace

Gate http_gate(std::string base) {
  while (!base.empty() && base.back() == '/') base.pop_back();
  return [base](const std::string& uri_r, Instant t) {
    const auto gate = fetch(base + "/timegate/" + uri::encode_component(uri_r),
                            {{"Accept-Datetime", format_http_datetime(t)}});
    if (gate->status == 404) throw UnknownResource(gate->body);
    if (gate->status != 302 || !gate->has_header("Location"))
      throw FetchFailed("TimeGate answered " + std::to_string(gate->status));
    MementoRecord m;
    m.uri_m = gate->get_header_value("Location");
    m.uri_r = uri_r;
    const auto memento = fetch(m.uri_m, {});
    if (memento->status != 200)
      throw FetchFailed("memento answered " + std::to_string(memento->status));
    m.snapshot_time = parse_http_datetime(memento->get_header_value("Content-Datetime"));
    m.body = memento->body;
    return m;
  };
}

}  // namespace chronomark
