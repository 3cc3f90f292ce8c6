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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chronomark/annotation.hpp"
#include "chronomark/temporal.hpp"

namespace chronomark {

struct CollectionEntry {
  std::string uri_trn;
  AnnotationView view;
  TimeClass time_class = TimeClass::Timeless;
  /// When-values per target. UniformTime entries list the annotation-level
  /// when under every target; targets without a when are absent.
  std::map<std::string, std::vector<Instant>> target_whens;
  /// Transcription text as ingested.
  std::string source;

  friend bool operator==(const CollectionEntry&,
                         const CollectionEntry&) = default;
};

/// The matching rule used by `Collection::search`. An entry matches a target
/// when it annotates it and either no interval is given, the entry situates
/// that target at no particular time, or one of its when-values for the
/// target lies in the closed interval.
bool entry_matches(const CollectionEntry& e, std::string_view target,
                   const std::optional<TimeInterval>& interval);

/// Sort key of a matching entry: its earliest qualifying when-value for the
/// target (none sorts first).
std::optional<Instant> entry_sort_key(const CollectionEntry& e,
                                      std::string_view target,
                                      const std::optional<TimeInterval>& interval);

struct HarvestFailure {
  std::string uri;
  std::string kind;  // FetchFailed, MalformedTranscription, ModelViolation
  std::string message;
};

/// Retrieves transcription text for a URI; throws on failure.
using Fetcher = std::function<std::string(const std::string& uri)>;

class Collection {
 public:
  /// Parses `text` as a transcription and indexes its annotation under
  /// `uri_trn`, replacing any previous entry. Throws MalformedTranscription
  /// or ModelViolation.
  void ingest(const std::string& uri_trn, std::string_view text);

  /// Ingests every feed URI; failures are collected, not thrown.
  std::vector<HarvestFailure> harvest(const std::vector<std::string>& feed,
                                      const Fetcher& fetch);

  /// Entries annotating `target`, ordered by (sort key, uri_trn).
  std::vector<CollectionEntry> search(
      std::string_view target,
      const std::optional<TimeInterval>& interval = std::nullopt) const;

  const CollectionEntry* find(std::string_view uri_trn) const;
  std::vector<const CollectionEntry*> entries() const;
  std::size_t size() const { return entries_.size(); }

  /// Writes one file per transcription plus `index.tsv` into `dir`.
  void save(const std::filesystem::path& dir) const;
  /// Rebuilds a collection from a directory written by `save`.
  static Collection load(const std::filesystem::path& dir);

 private:
  std::map<std::string, CollectionEntry, std::less<>> entries_;
  std::map<std::string, std::set<std::string>, std::less<>> by_target_;
};

}  // namespace chronomark
