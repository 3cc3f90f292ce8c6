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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chronomark/annotation.hpp"
#include "chronomark/archive.hpp"
#include "chronomark/collection.hpp"
#include "chronomark/graph.hpp"
#include "chronomark/temporal.hpp"

namespace chronomark {

// ---------------------------------------------------------------------------
// Reconstructing an annotation against archived representations.
// ---------------------------------------------------------------------------

struct Resolution {
  std::string uri_r;
  Instant requested;
  std::string uri_m;
  std::string body;
  /// The memento does not cover `requested`; it is the nearest available.
  bool clamped = false;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct ReconstructedAnnotation {
  AnnotationView view;
  std::vector<Resolution> resolutions;
};

/// Resolves (URI-R, datetime) to a memento; throws UnknownResource when it
/// has none.
using Gate = std::function<MementoRecord(const std::string& uri_r, Instant t)>;

/// A gate negotiating directly against an in-memory archive.
Gate archive_gate(const Archive& archive);

/// Resolves every (resource, when) tuple of `view` through `gate`. UniformTime
/// views are rewritten first; Timeless views produce no resolutions. Throws
/// ResolutionFailed when the gate does not know a resource and
/// OrderViolation when a when-value lies after `now`.
ReconstructedAnnotation reconstruct(const AnnotationView& view,
                                    const Gate& gate, Instant now);

// ---------------------------------------------------------------------------
// Finding the annotations that apply to a memento.
// ---------------------------------------------------------------------------

enum class Certainty { Valid, Observed, Approximate };

const char* to_string(Certainty c);

struct IntervalEstimate {
  TimeInterval interval;
  Certainty certainty = Certainty::Approximate;

  friend bool operator==(const IntervalEstimate&,
                         const IntervalEstimate&) = default;
};

/// True when the space-separated `rel` of `e` includes `name`.
bool has_rel(const LinkEntry& e, std::string_view name);

/// Target of the first rel="original" entry. Throws NoOriginalLink.
std::string discover_original(const std::vector<LinkEntry>& links);

/// Header-only estimate: half-way to each neighbouring memento, the memento's
/// own time when there is no previous one, and `now` when there is no next.
IntervalEstimate approximate_interval(std::optional<Instant> prev, Instant cur,
                                      std::optional<Instant> next, Instant now);

/// Span evidence from a TimeMap: mem:validOver wins over mem:observedOver.
/// Throws UnknownMemento or NoSpanEvidence.
IntervalEstimate precise_interval(const Graph& timemap, std::string_view uri_m);

struct MementoAnnotations {
  std::string uri_r;
  IntervalEstimate estimate;
  std::vector<CollectionEntry> matches;
};

/// Identifies the original resource from the memento's Link header, estimates
/// the interval its representation was served (TimeMap evidence when
/// available, otherwise neighbouring-memento datetimes) and searches the
/// collection with both.
///
/// The memento's own datetime is `content_datetime` when given, else the
/// datetime of a rel="memento" link to `uri_m`.
MementoAnnotations annotations_for_memento(
    std::string_view uri_m, const std::vector<LinkEntry>& links,
    std::optional<Instant> content_datetime, const Graph* timemap,
    const Collection& collection, Instant now);

}  // namespace chronomark
