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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chronomark {

/// A UTC point in time at one-second granularity.
struct Instant {
  std::int64_t seconds = 0;

  constexpr Instant() = default;
  constexpr explicit Instant(std::int64_t s) : seconds(s) {}

  friend constexpr auto operator<=>(Instant, Instant) = default;
};

/// Closed interval [start, end]. Construct through `make` to get the
/// start <= end check.
struct TimeInterval {
  Instant start;
  Instant end;

  static TimeInterval make(Instant start, Instant end);

  constexpr bool contains(Instant t) const {
    return start <= t && t <= end;
  }
  /// Number of whole seconds covered, counting both ends.
  constexpr std::int64_t length() const {
    return end.seconds - start.seconds + 1;
  }

  friend constexpr bool operator==(const TimeInterval&,
                                   const TimeInterval&) = default;
};

/// |a ∩ b| / |a ∪ b| over covered seconds.
double jaccard(const TimeInterval& a, const TimeInterval& b);

/// One relation of an HTTP Link header. `params` excludes `rel` and keeps
/// source order.
struct LinkEntry {
  std::string target;
  std::string rel;
  std::vector<std::pair<std::string, std::string>> params;

  /// Value of the first parameter called `name`, if any.
  std::optional<std::string> param(std::string_view name) const;

  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

/// Earliest and latest instants the wire formats can express
/// (0001-01-01T00:00:00Z .. 9999-12-31T23:59:59Z).
inline constexpr Instant kMinInstant{-62135596800};
inline constexpr Instant kMaxInstant{253402300799};

/// Parses `Fri, 22 Jan 2010 01:00:02 GMT`. The weekday must agree with the
/// date and the zone must be GMT.
Instant parse_http_datetime(std::string_view s);
std::string format_http_datetime(Instant t);

/// 14-digit YYYYMMDDHHMMSS stamps as used in archive paths.
Instant parse_archive_timestamp(std::string_view s);
std::string format_archive_timestamp(Instant t);

/// XML Schema dateTime in `Z` form, e.g. `2010-01-22T01:00:02Z`.
Instant parse_xsd_datetime(std::string_view s);
std::string format_xsd_datetime(Instant t);

std::vector<LinkEntry> parse_link_header(std::string_view s);
std::string emit_link_header(const std::vector<LinkEntry>& entries);

/// floor((a + b) / 2). Throws OrderViolation when a > b.
Instant midpoint(Instant a, Instant b);

}  // namespace chronomark
