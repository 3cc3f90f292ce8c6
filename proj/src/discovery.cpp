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

#include "chronomark/discovery.hpp"

#include <sstream>

#include "chronomark/errors.hpp"
#include "chronomark/vocab.hpp"

namespace chronomark {

namespace {

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

std::optional<Instant> link_datetime(const std::vector<LinkEntry>& links,
                                     std::string_view rel) {
  for (const auto& e : links) {
    if (!has_rel(e, rel)) continue;
    if (const auto dt = e.param("datetime")) return parse_http_datetime(*dt);
  }
  return std::nullopt;
}

}  // namespace

Gate archive_gate(const Archive& archive) {
  return [&archive](const std::string& uri_r, Instant t) {
    return resolve_timegate(archive, uri_r, t);
  };
}

ReconstructedAnnotation reconstruct(const AnnotationView& view,
                                    const Gate& gate, Instant now) {
  ReconstructedAnnotation out;
  out.view = classify_time(view) == TimeClass::UniformTime
                 ? rewrite_uniform_to_varied(view)
                 : view;
  for (const auto& tuple : extract_time_tuples(out.view)) {
    if (tuple.when > now)
      throw OrderViolation("<" + tuple.uri_r + "> is situated after now (" +
                           format_http_datetime(tuple.when) + ")");
    MementoRecord m;
    try {
      m = gate(tuple.uri_r, tuple.when);
    } catch (const UnknownResource& e) {
      throw ResolutionFailed(tuple.uri_r, e.what());
    }
    out.resolutions.push_back(Resolution{tuple.uri_r, tuple.when, m.uri_m,
                                         std::move(m.body),
                                         !covers(m, tuple.when)});
  }
  return out;
}

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::Valid: return "Valid";
    case Certainty::Observed: return "Observed";
    case Certainty::Approximate: return "Approximate";
  }
  return "?";
}

bool has_rel(const LinkEntry& e, std::string_view name) {
  std::istringstream words(e.rel);
  std::string w;
  while (words >> w)
    if (w == name) return true;
  return false;
}

std::string discover_original(const std::vector<LinkEntry>& links) {
  for (const auto& e : links)
    if (has_rel(e, "original")) return e.target;
  throw NoOriginalLink("no rel=\"original\" entry in Link header");
}

IntervalEstimate approximate_interval(std::optional<Instant> prev, Instant cur,
                                      std::optional<Instant> next, Instant now) {
  if (prev && *prev >= cur)
    throw OrderViolation("previous memento is not before the current one");
  if (next && *next <= cur)
    throw OrderViolation("next memento is not after the current one");
  if (cur > now) throw OrderViolation("memento datetime is after now");
  const auto lower = prev ? midpoint(*prev, cur) : cur;
  const auto upper = next ? midpoint(cur, *next) : now;
  return {TimeInterval::make(lower, upper), Certainty::Approximate};
}

IntervalEstimate precise_interval(const Graph& tm, std::string_view uri_m) {
  namespace mem = vocab::mem;
  const auto node = Term::iri(std::string(uri_m));
  if (tm.objects(node, iri(mem::kMementoFor)).empty())
    throw UnknownMemento("<" + std::string(uri_m) + "> is not in the TimeMap");

  const auto span_for = [&](std::string_view p) -> std::optional<TimeInterval> {
    const auto spans = tm.objects(node, iri(p));
    if (spans.empty()) return std::nullopt;
    const auto bound = [&](std::string_view q) {
      const auto v = tm.objects(spans.front(), iri(q));
      if (v.size() != 1 || !v.front().is_literal())
        throw MalformedTimeMap("span of <" + std::string(uri_m) +
                               "> lacks a single start/end");
      return parse_xsd_datetime(v.front().value);
    };
    // SELECT ?start ?end WHERE { <uri_m> p ?span . ?span mem:start ?start .
    //                            ?span mem:end ?end . }
    return TimeInterval::make(bound(mem::kStart), bound(mem::kEnd));
  };
  if (const auto valid = span_for(mem::kValidOver))
    return {*valid, Certainty::Valid};
  if (const auto observed = span_for(mem::kObservedOver))
    return {*observed, Certainty::Observed};
  throw NoSpanEvidence("no validOver or observedOver for <" +
                       std::string(uri_m) + ">");
}

MementoAnnotations annotations_for_memento(
    std::string_view uri_m, const std::vector<LinkEntry>& links,
    std::optional<Instant> content_datetime, const Graph* timemap,
    const Collection& collection, Instant now) {
  MementoAnnotations out;
  out.uri_r = discover_original(links);

  std::optional<IntervalEstimate> estimate;
  if (timemap) {
    try {
      estimate = precise_interval(*timemap, uri_m);
    } catch (const NoSpanEvidence&) {
    } catch (const UnknownMemento&) {
    }
  }
  if (!estimate) {
    auto cur = content_datetime;
    if (!cur) {
      for (const auto& e : links)
        if (e.target == uri_m && has_rel(e, "memento"))
          if (const auto dt = e.param("datetime")) cur = parse_http_datetime(*dt);
    }
    if (!cur)
      throw NoMementoDatetime("no datetime known for <" + std::string(uri_m) + ">");
    estimate = approximate_interval(link_datetime(links, "prev-memento"), *cur,
                                    link_datetime(links, "next-memento"), now);
  }
  out.estimate = *estimate;
  out.matches = collection.search(out.uri_r, out.estimate.interval);
  return out;
}

}  // namespace chronomark
