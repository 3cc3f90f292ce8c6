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

#include "chronomark/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"
#include "json.hpp"

namespace chronomark {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw WorkspaceError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so readers never see a half-written file.
void write_file(const fs::path& p, std::string_view data) {
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw WorkspaceError("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

json parse_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw WorkspaceError(p.string() + ": " + e.what());
  }
}

json span_to_json(const std::optional<TimeInterval>& span) {
  if (!span) return nullptr;
  return json::array(
      {format_xsd_datetime(span->start), format_xsd_datetime(span->end)});
}

std::optional<TimeInterval> span_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return TimeInterval::make(parse_xsd_datetime(j.at(0).get<std::string>()),
                            parse_xsd_datetime(j.at(1).get<std::string>()));
}

}  // namespace

ContentStore::ContentStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

bool ContentStore::put(std::string_view id, std::string_view body) {
  if (id.empty()) throw WorkspaceError("empty content id");
  try {
    parse_triples(body);
  } catch (const MalformedTriple& e) {
    throw MalformedTranscription(e.what());
  }
  const auto path = dir_ / uri::encode_component(id);
  const bool created = !fs::exists(path);
  write_file(path, body);
  return created;
}

std::optional<std::string> ContentStore::get(std::string_view id) const {
  const auto path = dir_ / uri::encode_component(id);
  if (id.empty() || !fs::exists(path)) return std::nullopt;
  return read_file(path);
}

std::vector<std::string> ContentStore::ids() const {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir_))
    if (e.is_regular_file() && e.path().extension() != ".tmp")
      out.push_back(uri::decode_component(e.path().filename().string()));
  std::sort(out.begin(), out.end());
  return out;
}

Workspace::Workspace(fs::path root, std::string base) : root_(std::move(root)) {
  fs::create_directories(root_ / "timelines");
  const auto config = root_ / "config.json";
  if (!base.empty()) {
    while (base.size() > 1 && base.back() == '/') base.pop_back();
    if (!uri::is_absolute(base))
      throw WorkspaceError("base is not an absolute URI: " + base);
    base_ = std::move(base);
    write_file(config, json{{"base", base_}}.dump(2) + "\n");
  } else if (fs::exists(config)) {
    base_ = parse_json(config).at("base").get<std::string>();
  } else {
    base_ = std::string(kDefaultBase);
  }
}

std::string Workspace::resource_uri(std::string_view id) const {
  return base_ + "/resource/" + uri::encode_component(id);
}

std::string Workspace::content_uri(std::string_view id) const {
  return base_ + "/content/" + uri::encode_component(id);
}

std::string Workspace::timegate_uri(std::string_view uri_r) const {
  return base_ + "/timegate/" + uri::encode_component(uri_r);
}

std::string Workspace::timemap_uri(std::string_view uri_r) const {
  return base_ + "/timemap/" + uri::encode_component(uri_r);
}

std::optional<std::string> Workspace::content_id(std::string_view uri) const {
  const auto prefix = base_ + "/content/";
  if (!uri.starts_with(prefix) || uri.size() == prefix.size()) return std::nullopt;
  return uri::decode_component(uri.substr(prefix.size()));
}

std::map<std::string, SeededResource> Workspace::resources() const {
  std::map<std::string, SeededResource> out;
  for (const auto& e : fs::directory_iterator(root_ / "timelines")) {
    if (e.path().extension() != ".json") continue;
    const auto j = parse_json(e.path());
    SeededResource r;
    try {
      r.id = j.at("id").get<std::string>();
      r.timeline.uri_r = j.at("uri_r").get<std::string>();
      for (const auto& v : j.at("versions"))
        r.timeline.versions.push_back(
            {parse_http_datetime(v.at("valid_from").get<std::string>()),
             v.at("body").get<std::string>()});
    } catch (const json::exception& ex) {
      throw WorkspaceError(e.path().string() + ": " + ex.what());
    }
    r.timeline.validate();
    out.emplace(r.id, std::move(r));
  }
  return out;
}

std::optional<SeededResource> Workspace::resource_by_uri(std::string_view uri_r) const {
  for (auto& [id, r] : resources())
    if (r.timeline.uri_r == uri_r) return std::move(r);
  return std::nullopt;
}

void Workspace::save_resource(const SeededResource& r) const {
  r.timeline.validate();
  json versions = json::array();
  for (const auto& v : r.timeline.versions)
    versions.push_back(
        {{"valid_from", format_http_datetime(v.valid_from)}, {"body", v.body}});
  const json j{{"id", r.id}, {"uri_r", r.timeline.uri_r}, {"versions", versions}};
  std::string text;
  try {
    text = j.dump(2) + "\n";
  } catch (const json::exception& e) {
    throw WorkspaceError("resource " + r.id + " is not UTF-8 text: " + e.what());
  }
  write_file(root_ / "timelines" / (uri::encode_component(r.id) + ".json"), text);
}

std::optional<Archive> Workspace::archive() const {
  const auto path = root_ / "archive.json";
  if (!fs::exists(path)) return std::nullopt;
  const auto j = parse_json(path);
  try {
    Archive a(parse_archive_kind(j.at("kind").get<std::string>()),
              j.at("base").get<std::string>());
    for (const auto& m : j.at("mementos")) {
      MementoRecord r;
      r.uri_m = m.at("uri_m").get<std::string>();
      r.uri_r = m.at("uri_r").get<std::string>();
      r.snapshot_time = parse_xsd_datetime(m.at("snapshot").get<std::string>());
      r.body = m.at("body").get<std::string>();
      r.span = span_from_json(m.at("span"));
      r.observed_span = span_from_json(m.at("observed_span"));
      if (!m.at("observations").is_null())
        r.observations = m.at("observations").get<std::int64_t>();
      a.insert(std::move(r));
    }
    return a;
  } catch (const json::exception& e) {
    throw WorkspaceError(path.string() + ": " + e.what());
  }
}

void Workspace::save_archive(const Archive& a) const {
  json mementos = json::array();
  for (const auto& uri_r : a.resources()) {
    for (const auto& m : a.mementos(uri_r)) {
      mementos.push_back({{"uri_m", m.uri_m},
                          {"uri_r", m.uri_r},
                          {"snapshot", format_xsd_datetime(m.snapshot_time)},
                          {"body", m.body},
                          {"span", span_to_json(m.span)},
                          {"observed_span", span_to_json(m.observed_span)},
                          {"observations", m.observations
                                               ? json(*m.observations)
                                               : json(nullptr)}});
    }
  }
  const json j{{"kind", to_string(a.kind())}, {"base", a.base()}, {"mementos", mementos}};
  write_file(root_ / "archive.json", j.dump(2) + "\n");
}

ContentStore Workspace::content() const { return ContentStore(root_ / "content"); }

std::vector<std::string> Workspace::feed() const {
  std::vector<std::string> out;
  const auto path = root_ / "feed.txt";
  if (!fs::exists(path)) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && std::find(out.begin(), out.end(), line) == out.end())
      out.push_back(line);
  return out;
}

void Workspace::append_feed(std::string_view uri) const {
  const auto current = feed();
  if (std::find(current.begin(), current.end(), uri) != current.end()) return;
  std::ofstream out(root_ / "feed.txt", std::ios::binary | std::ios::app);
  out << uri << '\n';
  if (!out) throw WorkspaceError("cannot append to feed.txt");
}

Collection Workspace::collection() const { return Collection::load(collection_dir()); }

void Workspace::save_collection(const Collection& c) const {
  fs::remove_all(collection_dir());
  c.save(collection_dir());
}

Fetcher Workspace::local_fetcher() const {
  return [store = content(), ws = *this](const std::string& uri) {
    const auto id = ws.content_id(uri);
    if (!id) throw FetchFailed("not served by this workspace: " + uri);
    auto body = store.get(*id);
    if (!body) throw FetchFailed("no content stored for " + uri);
    return std::move(*body);
  };
}

}  // namespace chronomark
