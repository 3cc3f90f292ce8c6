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

#include "chronomark/collection.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"

namespace chronomark {

namespace {

CollectionEntry make_entry(const std::string& uri_trn, std::string_view text) {
  Graph g;
  try {
    g = parse_triples(text);
  } catch (const MalformedTriple& e) {
    throw MalformedTranscription(e.what());
  }
  const auto [trn, uri_a] = find_transcribed(g);
  CollectionEntry e;
  e.uri_trn = uri_trn;
  e.view = parse_annotation(g, uri_a);
  e.time_class = classify_time(e.view);
  e.source = std::string(text);
  if (e.time_class == TimeClass::UniformTime) {
    for (const auto& t : e.view.targets)
      e.target_whens[t].push_back(*e.view.annotation_when);
  } else {
    for (const auto& c : e.view.contexts)
      if (c.role == ContextRole::Target && c.when)
        e.target_whens[c.about].push_back(*c.when);
  }
  for (auto& [t, whens] : e.target_whens) std::sort(whens.begin(), whens.end());
  return e;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw WorkspaceError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool entry_matches(const CollectionEntry& e, std::string_view target,
                   const std::optional<TimeInterval>& interval) {
  if (std::find(e.view.targets.begin(), e.view.targets.end(), target) ==
      e.view.targets.end())
    return false;
  if (!interval) return true;
  const auto it = e.target_whens.find(std::string(target));
  if (it == e.target_whens.end()) return true;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](Instant w) { return interval->contains(w); });
}

std::optional<Instant> entry_sort_key(const CollectionEntry& e,
                                      std::string_view target,
                                      const std::optional<TimeInterval>& interval) {
  const auto it = e.target_whens.find(std::string(target));
  if (it == e.target_whens.end()) return std::nullopt;
  for (const auto w : it->second)  // sorted ascending
    if (!interval || interval->contains(w)) return w;
  return std::nullopt;
}

void Collection::ingest(const std::string& uri_trn, std::string_view text) {
  auto entry = make_entry(uri_trn, text);
  if (const auto old = entries_.find(uri_trn); old != entries_.end()) {
    for (const auto& t : old->second.view.targets) {
      auto& bucket = by_target_[t];
      bucket.erase(uri_trn);
      if (bucket.empty()) by_target_.erase(t);
    }
    entries_.erase(old);
  }
  for (const auto& t : entry.view.targets) by_target_[t].insert(uri_trn);
  entries_.emplace(uri_trn, std::move(entry));
}

std::vector<HarvestFailure> Collection::harvest(
    const std::vector<std::string>& feed, const Fetcher& fetch) {
  std::vector<HarvestFailure> failures;
  for (const auto& uri : feed) {
    std::string text;
    try {
      text = fetch(uri);
    } catch (const std::exception& e) {
      failures.push_back({uri, "FetchFailed", e.what()});
      continue;
    }
    try {
      ingest(uri, text);
    } catch (const Error& e) {
      failures.push_back({uri, e.kind(), e.what()});
    }
  }
  return failures;
}

std::vector<CollectionEntry> Collection::search(
    std::string_view target, const std::optional<TimeInterval>& interval) const {
  std::vector<std::pair<std::optional<Instant>, const CollectionEntry*>> hits;
  if (const auto bucket = by_target_.find(target); bucket != by_target_.end()) {
    for (const auto& uri_trn : bucket->second) {
      const auto& e = entries_.find(uri_trn)->second;
      if (entry_matches(e, target, interval))
        hits.emplace_back(entry_sort_key(e, target, interval), &e);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second->uri_trn < y.second->uri_trn;
  });
  std::vector<CollectionEntry> out;
  out.reserve(hits.size());
  for (const auto& [key, e] : hits) out.push_back(*e);
  return out;
}

const CollectionEntry* Collection::find(std::string_view uri_trn) const {
  const auto it = entries_.find(uri_trn);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const CollectionEntry*> Collection::entries() const {
  std::vector<const CollectionEntry*> out;
  for (const auto& [k, e] : entries_) out.push_back(&e);
  return out;
}

void Collection::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir / "index.tsv", std::ios::binary | std::ios::trunc);
  if (!index) throw WorkspaceError("cannot write " + (dir / "index.tsv").string());
  for (const auto& [uri_trn, e] : entries_) {
    const auto file = uri::encode_component(uri_trn) + ".nt";
    std::ofstream out(dir / file, std::ios::binary | std::ios::trunc);
    out << e.source;
    if (!out) throw WorkspaceError("cannot write " + (dir / file).string());
    index << uri_trn << '\t' << file << '\n';
  }
}

Collection Collection::load(const std::filesystem::path& dir) {
  Collection c;
  if (!std::filesystem::exists(dir / "index.tsv")) return c;
  std::istringstream index(read_file(dir / "index.tsv"));
  std::string line;
  while (std::getline(index, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw WorkspaceError("malformed collection index line: " + line);
    c.ingest(line.substr(0, tab), read_file(dir / line.substr(tab + 1)));
  }
  return c;
}

}  // namespace chronomark
