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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chronomark/graph.hpp"
#include "chronomark/temporal.hpp"
#include "chronomark/vocab.hpp"

namespace chronomark {

/// Immutable description of the addressed sub-part of a resource. The body
/// is opaque (an XPath, an SVG shape, ...).
struct SegmentDescription {
  std::string uri_sd;
  std::string body;

  friend bool operator==(const SegmentDescription&,
                         const SegmentDescription&) = default;
};

enum class ContextRole { Target, Content };

/// Per-resource information inside one annotation: a point in time and/or a
/// segment. `about` names a target (Target role) or the content.
struct ContextView {
  std::string uri_ctx;
  std::string about;
  ContextRole role = ContextRole::Target;
  std::optional<Instant> when;
  std::optional<SegmentDescription> segment;

  friend bool operator==(const ContextView&, const ContextView&) = default;
};

/// Typed projection of an annotation graph rooted at `uri_a`.
struct AnnotationView {
  std::string uri_a;
  std::string content;
  std::vector<std::string> targets;
  std::string predicate{vocab::oac::kAnnotates};
  std::optional<Instant> annotation_when;
  std::vector<ContextView> contexts;
  std::optional<std::string> transcription;

  friend bool operator==(const AnnotationView&,
                         const AnnotationView&) = default;
};

enum class TimeClass { Timeless, UniformTime, VariedTime };

const char* to_string(TimeClass c);

/// A resource paired with the instant at which the annotation situates it.
struct TimeTuple {
  std::string uri_r;
  Instant when;

  friend bool operator==(const TimeTuple&, const TimeTuple&) = default;
};

/// Throws ModelViolation naming the first broken invariant.
void validate(const AnnotationView& view);

/// All triples implied by the view, including the transcription edge when
/// `view.transcription` is set.
Graph build_annotation(const AnnotationView& view);

/// Reads the annotation rooted at `uri_a` back out of `g`. The result is in
/// canonical order (see `canonicalize`) since graphs carry no ordering.
AnnotationView parse_annotation(const Graph& g, std::string_view uri_a);

/// Sorts targets and contexts; two views describing the same graph compare
/// equal after canonicalization.
AnnotationView canonicalize(AnnotationView view);

TimeClass classify_time(const AnnotationView& view);

/// Moves the annotation-level `when` onto one context per resource. The
/// first existing context of a resource is reused; resources without one
/// get a new context named `<uri_a>#ctx-<n>`. Throws NotUniform unless the
/// view is UniformTime.
AnnotationView rewrite_uniform_to_varied(const AnnotationView& view);

/// (resource, when) for every context carrying a `when`: targets in
/// declaration order first, then the content. Timeless views yield nothing;
/// UniformTime views are rewritten first.
std::vector<TimeTuple> extract_time_tuples(const AnnotationView& view);

/// The single `oac:transcribes` edge of a transcription graph, as
/// (uri_trn, uri_a). Throws MalformedTranscription unless there is exactly
/// one.
std::pair<std::string, std::string> find_transcribed(const Graph& g);

}  // namespace chronomark
