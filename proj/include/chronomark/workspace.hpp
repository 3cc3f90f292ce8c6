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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chronomark/archive.hpp"
#include "chronomark/collection.hpp"

namespace chronomark {

/// Byte-exact store of content-server resources, one file per id.
class ContentStore {
 public:
  explicit ContentStore(std::filesystem::path dir);

  /// Stores `body` under `id` after checking it parses as triple lines.
  /// Returns true when the id was new. Throws MalformedTranscription.
  bool put(std::string_view id, std::string_view body);
  std::optional<std::string> get(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::filesystem::path dir_;
};

/// A seeded original resource: the route id plus its ground-truth timeline.
struct SeededResource {
  std::string id;
  ResourceTimeline timeline;
};

/// On-disk layout shared by the CLI and the service:
///
///   config.json          base URI
///   timelines/<id>.json  seeded resources
///   archive.json         captured mementos (with bodies)
///   content/             content-server files
///   feed.txt             transcription URIs to harvest, one per line
///   collection/          harvested transcriptions + index.tsv
class Workspace {
 public:
  static constexpr std::string_view kDefaultBase = "http://localhost:8080";

  /// Opens (and if needed creates) the workspace at `root`. A non-empty
  /// `base` is recorded in config.json; otherwise the stored one (or the
  /// default) is used.
  explicit Workspace(std::filesystem::path root, std::string base = {});

  const std::filesystem::path& root() const { return root_; }
  const std::string& base() const { return base_; }
  std::string archive_base() const { return base_ + "/memento"; }
  std::string resource_uri(std::string_view id) const;
  std::string content_uri(std::string_view id) const;
  std::string timegate_uri(std::string_view uri_r) const;
  std::string timemap_uri(std::string_view uri_r) const;
  /// Inverse of content_uri; nullopt for URIs this workspace does not serve.
  std::optional<std::string> content_id(std::string_view uri) const;

  std::map<std::string, SeededResource> resources() const;
  std::optional<SeededResource> resource_by_uri(std::string_view uri_r) const;
  void save_resource(const SeededResource& r) const;

  std::optional<Archive> archive() const;
  void save_archive(const Archive& a) const;

  ContentStore content() const;

  std::vector<std::string> feed() const;
  void append_feed(std::string_view uri) const;

  std::filesystem::path collection_dir() const { return root_ / "collection"; }
  Collection collection() const;
  void save_collection(const Collection& c) const;

  /// A fetcher resolving this workspace's content URIs from disk.
  Fetcher local_fetcher() const;

 private:
  std::filesystem::path root_;
  std::string base_;
};

}  // namespace chronomark
