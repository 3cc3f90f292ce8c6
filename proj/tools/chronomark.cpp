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

// chronomark: operator commands over a workspace directory.
//
// Exit status: 0 success, 1 operational failure, 2 usage error.

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chronomark/annotation.hpp"
#include "chronomark/archive.hpp"
#include "chronomark/discovery.hpp"
#include "chronomark/errors.hpp"
#include "chronomark/evaluation.hpp"
#include "chronomark/service.hpp"
#include "chronomark/uri.hpp"
#include "chronomark/workspace.hpp"
#include "httplib.h"

namespace cm = chronomark;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Bad flag values surface as this so they map to the usage exit code.
struct UsageError {
  std::string kind;
  std::string message;
};

cm::Instant flag_datetime(const std::string& flag, const std::string& value) {
  try {
    return cm::parse_http_datetime(value);
  } catch (const cm::MalformedDatetime& e) {
    throw UsageError{e.kind(), flag + ": " + e.what()};
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string slug(std::string_view uri) {
  const auto scheme = uri.find("://");
  if (scheme != std::string_view::npos) uri.remove_prefix(scheme + 3);
  std::string out;
  for (char c : uri) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "resource" : out;
}

struct Globals {
  std::string workspace;
  std::string base;
  std::string now;
};

struct Context {
  cm::Workspace ws;
  cm::Instant now;
};

Context open(const Globals& g) {
  if (g.workspace.empty()) throw UsageError{"Usage", "--workspace is required"};
  std::optional<cm::Instant> now;
  if (!g.now.empty()) {
    now = flag_datetime("--now", g.now);
  } else if (const char* env = std::getenv("CHRONOMARK_NOW"); env && *env) {
    now = flag_datetime("CHRONOMARK_NOW", env);
  }
  if (!now) {
    const auto s = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::system_clock::now().time_since_epoch());
    now = cm::Instant{s.count()};
  }
  return {cm::Workspace(g.workspace, g.base), *now};
}

cm::ServiceConfig service_config(const Context& ctx) {
  cm::ServiceConfig cfg;
  cfg.workspace = ctx.ws.root();
  cfg.now = ctx.now;
  return cfg;
}

// Fetches a URI either through the in-process service (when it lives under
// the workspace base) or over HTTP.
class Transport {
 public:
  Transport(const Context& ctx, bool remote)
      : base_(ctx.ws.base()), remote_(remote) {
    if (!remote_) service_.emplace(service_config(ctx));
  }

  cm::Response get(const std::string& uri,
                   std::vector<std::pair<std::string, std::string>> headers = {}) const {
    if (!uri.starts_with(base_ + "/"))
      throw cm::FetchFailed("not served by this workspace: " + uri);
    const auto target = uri.substr(base_.size());
    if (service_) return service_->handle({"GET", target, std::move(headers), ""});

    httplib::Client client(base_);
    client.set_url_encode(false);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = client.Get(target, h);
    if (!res) throw cm::FetchFailed("GET " + uri + ": " + httplib::to_string(res.error()));
    cm::Response out;
    out.status = res->status;
    out.body = res->body;
    for (const auto& [k, v] : res->headers) out.headers.emplace_back(k, v);
    return out;
  }

 private:
  std::string base_;
  bool remote_;
  std::optional<cm::Service> service_;
};

int cmd_seed(const Globals& g, const std::string& uri, const std::string& at,
             std::string body, const std::string& body_file, std::string id) {
  auto ctx = open(g);
  const auto t = flag_datetime("--at", at);
  if (!body_file.empty()) {
    std::ifstream in(body_file, std::ios::binary);
    if (!in) throw cm::WorkspaceError("cannot read " + body_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  if (uri.empty() && id.empty()) throw UsageError{"Usage", "give --uri or --id"};
  const auto uri_r = uri.empty() ? ctx.ws.resource_uri(id) : uri;
  if (!cm::uri::is_absolute(uri_r))
    throw UsageError{"Usage", "--uri is not an absolute URI: " + uri_r};

  cm::SeededResource r;
  if (auto existing = ctx.ws.resource_by_uri(uri_r)) {
    if (!id.empty() && id != existing->id)
      throw cm::WorkspaceError(uri_r + " is already seeded as '" + existing->id + "'");
    r = std::move(*existing);
  } else {
    if (id.empty()) id = slug(uri_r);
    if (ctx.ws.resources().count(id))
      throw cm::WorkspaceError("resource id '" + id + "' is taken");
    r.id = id;
    r.timeline.uri_r = uri_r;
  }
  auto& v = r.timeline.versions;
  const auto pos = std::lower_bound(v.begin(), v.end(), t, [](const auto& x, cm::Instant y) {
    return x.valid_from < y;
  });
  v.insert(pos, {t, body});
  ctx.ws.save_resource(r);
  std::cout << "resource=" << r.id << "\nuri=" << uri_r << "\nversions=" << v.size() << "\n";
  return kOk;
}

int cmd_capture(const Globals& g, const std::string& mode, const std::string& crawls_flag) {
  auto ctx = open(g);
  cm::ArchiveKind kind;
  try {
    kind = cm::parse_archive_kind(mode);
  } catch (const std::exception&) {
    throw UsageError{"Usage", "--mode must be transactional or crawler"};
  }
  std::vector<cm::Instant> crawls;
  if (kind == cm::ArchiveKind::Crawler) {
    std::stringstream ss(crawls_flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        crawls.push_back(cm::parse_archive_timestamp(item));
      } catch (const cm::MalformedTimestamp& e) {
        throw UsageError{e.kind(), std::string("--crawls: ") + e.what()};
      }
    }
    if (crawls.empty()) throw UsageError{"Usage", "--mode crawler needs --crawls"};
    std::sort(crawls.begin(), crawls.end());
    crawls.erase(std::unique(crawls.begin(), crawls.end()), crawls.end());
  } else if (!crawls_flag.empty()) {
    throw UsageError{"Usage", "--crawls only applies to --mode crawler"};
  }

  cm::Archive archive(kind, ctx.ws.archive_base());
  for (const auto& [id, r] : ctx.ws.resources()) {
    const auto& tl = r.timeline;
    if (kind == cm::ArchiveKind::Transactional) {
      archive.absorb(cm::transactional_capture(tl, ctx.now, archive.base()));
      continue;
    }
    std::vector<cm::Instant> seen;
    for (const auto c : crawls)
      if (c >= tl.versions.front().valid_from && c <= ctx.now) seen.push_back(c);
    if (!seen.empty()) archive.absorb(cm::crawler_capture(tl, seen, archive.base()));
  }
  ctx.ws.save_archive(archive);
  for (const auto& uri_r : archive.resources())
    for (const auto& m : archive.mementos(uri_r))
      std::cout << "memento=" << m.uri_m << "\n";
  std::cout << "mementos=" << archive.size() << "\n";
  return kOk;
}

int report_harvest(const cm::Response& r) {
  std::cout << r.body;
  return r.body.find("failure=") == std::string::npos ? kOk : kFailure;
}

int cmd_annotate(const Globals& g, const std::vector<std::string>& targets,
                 const std::string& at, const std::string& content,
                 const std::string& content_at, const std::string& segment) {
  auto ctx = open(g);
  const auto when = flag_datetime("--at", at);
  std::optional<cm::Instant> content_when;
  if (!content_at.empty()) content_when = flag_datetime("--content-at", content_at);
  if (when > ctx.now || (content_when && *content_when > ctx.now))
    throw cm::OrderViolation("annotation times must not be after now");

  const auto n = ctx.ws.feed().size() + 1;
  const auto id = "a" + std::to_string(n);
  const auto note = "note-" + std::to_string(n);
  const auto base = ctx.ws.base();

  // The annotation's text becomes a resource of its own.
  cm::SeededResource content_res{note, {ctx.ws.resource_uri(note), {}}};
  content_res.timeline.versions.push_back({content_when.value_or(when), content});
  ctx.ws.save_resource(content_res);
  if (auto archive = ctx.ws.archive()) {
    const auto& tl = content_res.timeline;
    if (archive->kind() == cm::ArchiveKind::Transactional) {
      archive->absorb(cm::transactional_capture(tl, ctx.now, archive->base()));
    } else {
      archive->absorb(cm::crawler_capture(tl, {tl.versions.front().valid_from}, archive->base()));
    }
    ctx.ws.save_archive(*archive);
  }

  cm::AnnotationView v;
  v.uri_a = base + "/annotation/" + id;
  v.content = content_res.timeline.uri_r;
  v.targets = targets;
  v.transcription = ctx.ws.content_uri("trn-" + id);
  int k = 0;
  for (const auto& t : targets) {
    cm::ContextView c{v.uri_a + "#ctx-" + std::to_string(++k), t, cm::ContextRole::Target,
                      when, std::nullopt};
    if (!segment.empty()) c.segment = cm::SegmentDescription{c.uri_ctx + "-sd", segment};
    v.contexts.push_back(std::move(c));
  }
  if (content_when)
    v.contexts.push_back({v.uri_a + "#ctx-" + std::to_string(++k), v.content,
                          cm::ContextRole::Content, content_when, std::nullopt});
  try {
    cm::validate(v);
  } catch (const cm::ModelViolation& e) {
    throw UsageError{e.kind(), e.what()};
  }

  const cm::Service service(service_config(ctx));
  const auto put = service.handle(
      {"PUT", "/content/trn-" + id, {}, cm::serialize_triples(cm::build_annotation(v))});
  if (put.status != 201 && put.status != 200)
    throw cm::FetchFailed("PUT transcription: " + put.body);
  ctx.ws.append_feed(*v.transcription);
  std::cout << "annotation=" << v.uri_a << "\ntranscription=" << *v.transcription
            << "\ncontent=" << v.content << "\n";
  return report_harvest(service.handle({"POST", "/harvest", {}, ""}));
}

int cmd_harvest(const Globals& g) {
  auto ctx = open(g);
  const cm::Service service(service_config(ctx));
  return report_harvest(service.handle({"POST", "/harvest", {}, ""}));
}

int cmd_reconstruct(const Globals& g, const std::string& uri_trn, bool no_memento,
                    bool remote) {
  auto ctx = open(g);
  const auto collection = ctx.ws.collection();
  const auto* entry = collection.find(uri_trn);
  if (!entry) throw cm::UnknownResource("no harvested transcription " + uri_trn);
  const auto& view = entry->view;
  std::cout << "annotation=" << view.uri_a << "\nclass=" << cm::to_string(entry->time_class)
            << "\n";

  const auto resources = ctx.ws.resources();
  int failures = 0;
  const auto current = [&](const std::string& uri_r,
                           std::optional<cm::Instant> requested) {
    std::cout << "resource=" << uri_r;
    if (requested) std::cout << " requested=\"" << cm::format_http_datetime(*requested) << "\"";
    for (const auto& [id, r] : resources) {
      if (r.timeline.uri_r != uri_r) continue;
      try {
        std::cout << " current=true digest=" << sha256_hex(cm::rep_at(r.timeline, ctx.now))
                  << "\n";
        return;
      } catch (const cm::BeforeCreation&) {
        break;
      }
    }
    std::cout << " error=UnknownResource\n";
    ++failures;
  };

  const auto tuples = cm::extract_time_tuples(view);
  if (no_memento) {
    for (const auto& t : tuples) current(t.uri_r, t.when);
    if (tuples.empty())
      for (const auto& t : view.targets) current(t, std::nullopt);
    return failures ? kFailure : kOk;
  }

  cm::Gate gate;
  std::optional<cm::Archive> archive;
  if (remote) {
    gate = cm::http_gate(ctx.ws.base());
  } else {
    archive = ctx.ws.archive();
    if (!archive) throw cm::WorkspaceError("no archive captured yet");
    gate = cm::archive_gate(*archive);
  }
  // Report unresolvable resources one by one instead of aborting.
  std::map<std::string, std::string> unresolved;
  const cm::Gate tolerant = [&](const std::string& uri_r, cm::Instant t) {
    try {
      return gate(uri_r, t);
    } catch (const cm::Error& e) {
      unresolved[uri_r] = std::string(e.kind()) + ": " + e.what();
      cm::MementoRecord none;
      none.uri_r = uri_r;
      none.snapshot_time = t;
      return none;
    }
  };
  const auto out = cm::reconstruct(view, tolerant, ctx.now);
  for (const auto& r : out.resolutions) {
    std::cout << "resource=" << r.uri_r << " requested=\""
              << cm::format_http_datetime(r.requested) << "\"";
    if (const auto it = unresolved.find(r.uri_r); it != unresolved.end()) {
      std::cout << " error=ResolutionFailed\n";
      std::cerr << "ResolutionFailed: " << r.uri_r << ": " << it->second << "\n";
      ++failures;
      continue;
    }
    std::cout << " memento=" << r.uri_m << " clamped=" << (r.clamped ? "true" : "false")
              << " digest=" << sha256_hex(r.body) << "\n";
  }
  if (out.resolutions.empty())
    for (const auto& t : view.targets) current(t, std::nullopt);
  std::cout << "resolutions=" << out.resolutions.size() << "\n";
  return failures ? kFailure : kOk;
}

int cmd_discover(const Globals& g, const std::string& uri_m, bool use_timemap, bool remote) {
  auto ctx = open(g);
  const Transport transport(ctx, remote);
  const auto m = transport.get(uri_m);
  if (m.status == 404) throw cm::UnknownMemento("no memento at " + uri_m);
  if (m.status != 200)
    throw cm::FetchFailed("memento answered " + std::to_string(m.status));
  const auto link = m.header("Link");
  if (!link) throw cm::NoOriginalLink("memento response has no Link header");
  const auto links = cm::parse_link_header(*link);
  std::optional<cm::Instant> content_datetime;
  if (const auto cd = m.header("Content-Datetime"))
    content_datetime = cm::parse_http_datetime(*cd);

  std::optional<cm::Graph> timemap;
  if (use_timemap) {
    for (const auto& l : links) {
      if (!cm::has_rel(l, "timemap")) continue;
      const auto tm = transport.get(l.target);
      if (tm.status == 200) timemap = cm::parse_triples(tm.body);
      break;
    }
  }
  const auto out = cm::annotations_for_memento(uri_m, links, content_datetime,
                                               timemap ? &*timemap : nullptr,
                                               ctx.ws.collection(), ctx.now);
  std::cout << "original=" << out.uri_r << "\nstart=\""
            << cm::format_http_datetime(out.estimate.interval.start) << "\"\nend=\""
            << cm::format_http_datetime(out.estimate.interval.end)
            << "\"\ncertainty=" << cm::to_string(out.estimate.certainty) << "\n";
  for (const auto& e : out.matches) std::cout << "match=" << e.uri_trn << "\n";
  std::cout << "matches=" << out.matches.size() << "\n";
  return kOk;
}

int cmd_serve(const Globals& g, const std::string& host, int port) {
  auto ctx = open(g);
  auto cfg = service_config(ctx);
  if (g.now.empty() && !std::getenv("CHRONOMARK_NOW")) cfg.now.reset();
  const cm::Service service(cfg);
  cm::HttpServer server(service);
  const int bound = server.bind(host, port);
  std::cout << "listening=http://" << host << ":" << bound << "\nbase=" << ctx.ws.base()
            << std::endl;
  return server.listen() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-aware annotation and web archive toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("-w,--workspace", g.workspace, "Workspace directory");
  app.add_option("--base", g.base, "Base URI recorded in the workspace");
  app.add_option("--now", g.now, "Fixed current time (RFC 1123); also CHRONOMARK_NOW");

  auto* seed = app.add_subcommand("seed-timeline", "Add a version to an original resource");
  std::string uri, at, body, body_file, id;
  seed->add_option("--uri", uri, "Original resource URI");
  seed->add_option("--at", at, "Time the version starts being served")->required();
  seed->add_option("--body", body, "Representation body");
  seed->add_option("--body-file", body_file, "Read the body from a file");
  seed->add_option("--id", id, "Route id under /resource/");

  auto* capture = app.add_subcommand("capture", "Archive every seeded resource");
  std::string mode = "transactional", crawls;
  capture->add_option("--mode", mode, "transactional or crawler");
  capture->add_option("--crawls", crawls, "Comma-separated 14-digit crawl stamps");

  auto* annotate = app.add_subcommand("annotate", "Annotate resources as of a time");
  std::vector<std::string> targets;
  std::string content, content_at, segment;
  annotate->add_option("--target", targets, "Target URI (repeatable)")->required();
  annotate->add_option("--at", at, "When the targets were annotated")->required();
  annotate->add_option("--content", content, "Annotation text")->required();
  annotate->add_option("--content-at", content_at, "When the content was observed");
  annotate->add_option("--segment", segment, "Segment of the targets addressed");

  auto* harvest = app.add_subcommand("harvest", "Harvest the feed into the collection");

  auto* reconstruct = app.add_subcommand("reconstruct", "Resolve an annotation's resources");
  std::string annotation;
  bool no_memento = false, remote = false;
  reconstruct->add_option("--annotation", annotation, "Transcription URI")->required();
  reconstruct->add_flag("--no-memento", no_memento, "Use current representations");
  reconstruct->add_flag("--remote", remote, "Negotiate over HTTP with a running server");

  auto* discover = app.add_subcommand("discover", "Find annotations for a memento");
  std::string memento;
  bool use_timemap = false;
  discover->add_option("--memento", memento, "Memento URI")->required();
  discover->add_flag("--use-timemap", use_timemap, "Use TimeMap span evidence");
  discover->add_flag("--remote", remote, "Fetch from a running server");

  auto* evaluate = app.add_subcommand("evaluate", "Run the randomized evaluation");
  cm::ScenarioSpec spec;
  evaluate->add_option("--seed", spec.seed);
  evaluate->add_option("--timelines", spec.timelines);
  evaluate->add_option("--min-versions", spec.min_versions);
  evaluate->add_option("--max-versions", spec.max_versions);
  evaluate->add_option("--min-density", spec.min_density, "Per-second crawl chance");
  evaluate->add_option("--max-density", spec.max_density);
  evaluate->add_option("--annotations", spec.annotations, "Per timeline");
  evaluate->add_option("--trials", spec.trials);
  evaluate->add_flag("--transactional-only", spec.transactional_only);

  auto* serve = app.add_subcommand("serve", "Serve the workspace over HTTP");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "Usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*seed) return cmd_seed(g, uri, at, body, body_file, id);
    if (*capture) return cmd_capture(g, mode, crawls);
    if (*annotate) return cmd_annotate(g, targets, at, content, content_at, segment);
    if (*harvest) return cmd_harvest(g);
    if (*reconstruct) return cmd_reconstruct(g, annotation, no_memento, remote);
    if (*discover) return cmd_discover(g, memento, use_timemap, remote);
    if (*evaluate) {
      try {
        spec.validate();
      } catch (const cm::InvalidScenario& e) {
        throw UsageError{e.kind(), e.what()};
      }
      std::cout << cm::evaluate(spec).to_text();
      return kOk;
    }
    if (*serve) return cmd_serve(g, host, port);
  } catch (const UsageError& e) {
    std::cerr << e.kind << ": " << e.message << "\n";
    return kUsage;
  } catch (const cm::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
