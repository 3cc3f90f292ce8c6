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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chronomark/graph.hpp"
#include "chronomark/temporal.hpp"

namespace chronomark {

struct VersionRecord {
  Instant valid_from;
  std::string body;

  friend bool operator==(const VersionRecord&, const VersionRecord&) = default;
};

/// Ground truth for one original resource: the body it served from each
/// `valid_from` until the next one.
struct ResourceTimeline {
  std::string uri_r;
  std::vector<VersionRecord> versions;

  /// Throws InvalidTimeline unless versions are non-empty, strictly
  /// increasing in valid_from, and consecutive bodies differ.
  void validate() const;

  /// Index of the version served at `t`. Throws BeforeCreation.
  std::size_t version_index_at(Instant t) const;

  /// Seconds during which version `i` was served, up to `now` for the last.
  TimeInterval version_span(std::size_t i, Instant now) const;

  friend bool operator==(const ResourceTimeline&,
                         const ResourceTimeline&) = default;
};

/// rep(URI-R, t): the body served at `t`. Throws BeforeCreation.
const std::string& rep_at(const ResourceTimeline& tl, Instant t);

enum class ArchiveKind { Transactional, Crawler };

const char* to_string(ArchiveKind k);
ArchiveKind parse_archive_kind(std::string_view s);

struct MementoRecord {
  std::string uri_m;
  std::string uri_r;
  Instant snapshot_time;
  std::string body;
  std::optional<TimeInterval> span;           // transactional provenance
  std::optional<TimeInterval> observed_span;  // crawler provenance
  std::optional<std::int64_t> observations;

  friend bool operator==(const MementoRecord&, const MementoRecord&) = default;
};

/// `<base>/<14-digit stamp>/<uri_r>`
std::string memento_uri(std::string_view archive_base, Instant snapshot,
                        std::string_view uri_r);

/// Whether negotiating for `t` onto `m` is exact rather than clamped: the
/// validity span contains `t`, or with no span, the snapshot is not after it.
bool covers(const MementoRecord& m, Instant t);

class Archive {
 public:
  Archive(ArchiveKind kind, std::string base)
      : kind_(kind), base_(std::move(base)) {}

  ArchiveKind kind() const { return kind_; }
  const std::string& base() const { return base_; }

  /// Adds `m` in snapshot order. Throws std::invalid_argument when it would
  /// duplicate a snapshot time or a memento URI, or violate the provenance
  /// rules (at most one of span / observed_span, snapshot inside it).
  void insert(MementoRecord m);
  /// Adds every memento of `other`; kinds must agree.
  void absorb(const Archive& other);
  /// Drops every memento of `uri_r`.
  void forget(std::string_view uri_r);

  bool has(std::string_view uri_r) const;
  /// Mementos of `uri_r` in snapshot order. Throws UnknownResource.
  const std::vector<MementoRecord>& mementos(std::string_view uri_r) const;
  std::vector<std::string> resources() const;
  std::size_t size() const;

  const MementoRecord* find(std::string_view uri_m) const;

  friend bool operator==(const Archive&, const Archive&) = default;

 private:
  ArchiveKind kind_;
  std::string base_;
  std::map<std::string, std::vector<MementoRecord>, std::less<>> series_;
  std::map<std::string, std::pair<std::string, Instant>, std::less<>> by_uri_m_;
};

/// One memento per version, valid from its valid_from to one second before
/// the next version (or `now` for the last).
Archive transactional_capture(const ResourceTimeline& tl, Instant now,
                              std::string_view archive_base);

/// Snapshots at each crawl instant; runs of consecutive crawls returning the
/// same body collapse into one memento stamped with the first crawl.
Archive crawler_capture(const ResourceTimeline& tl,
                        const std::vector<Instant>& crawls,
                        std::string_view archive_base);

/// TimeGate negotiation. Transactional archives pick the memento whose span
/// contains `t`, crawler archives the latest snapshot not after `t`; requests
/// outside the archive's range clamp to the nearest end.
const MementoRecord& resolve_timegate(const Archive& a, std::string_view uri_r,
                                      Instant t);

struct Neighbors {
  std::optional<MementoRecord> prev;
  std::optional<MementoRecord> next;
};

/// Mementos immediately before and after `m` for the same resource. Throws
/// NotInArchive.
Neighbors adjacent(const Archive& a, const MementoRecord& m);

/// TimeMap graph for `uri_r`. Throws UnknownResource.
Graph timemap(const Archive& a, std::string_view uri_r);

/// Reads memento records (without bodies) for `uri_r` back from a TimeMap
/// graph, in snapshot order.
std::vector<MementoRecord> timemap_entries(const Graph& tm,
                                           std::string_view uri_r);

/// Original resources declared in a TimeMap graph.
std::vector<std::string> timemap_originals(const Graph& tm);

}  // namespace chronomark
