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

#include "chronomark/annotation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"

namespace chronomark {

namespace {

namespace oac = vocab::oac;

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

Term when_literal(Instant t) {
  return Term::literal(format_xsd_datetime(t), std::string(vocab::kXsdDateTime));
}

[[noreturn]] void violation(const std::string& why) {
  throw ModelViolation(why);
}

void require_uri(const std::string& v, const char* what) {
  if (!uri::is_absolute(v))
    violation(std::string(what) + " is not an absolute URI: '" + v + "'");
}

std::string single_iri(const Graph& g, const Term& s, std::string_view p,
                       const char* what) {
  const auto objs = g.objects(s, iri(p));
  if (objs.size() != 1)
    violation("expected exactly one " + std::string(what) + " on <" + s.value +
              ">, found " + std::to_string(objs.size()));
  if (!objs.front().is_iri())
    violation(std::string(what) + " of <" + s.value + "> is a literal");
  return objs.front().value;
}

std::optional<Instant> optional_when(const Graph& g, const Term& s) {
  const auto objs = g.objects(s, iri(oac::kWhen));
  if (objs.empty()) return std::nullopt;
  if (objs.size() > 1) violation("more than one oac:when on <" + s.value + ">");
  const auto& o = objs.front();
  if (!o.is_literal() || o.datatype != std::string(vocab::kXsdDateTime))
    violation("oac:when on <" + s.value + "> is not an xsd:dateTime literal");
  try {
    return parse_xsd_datetime(o.value);
  } catch (const MalformedDatetime& e) {
    violation(e.what());
  }
}

ContextView read_context(const Graph& g, const std::string& uri_ctx,
                         ContextRole role) {
  const auto ctx = Term::iri(uri_ctx);
  if (!g.contains({ctx, iri(vocab::kRdfType), iri(oac::kContext)}))
    violation("<" + uri_ctx + "> is not typed oac:Context");
  ContextView view;
  view.uri_ctx = uri_ctx;
  view.role = role;
  view.about = single_iri(g, ctx, oac::kContextAbout, "oac:contextAbout");
  view.when = optional_when(g, ctx);

  const auto segments = g.objects(ctx, iri(oac::kHasSegmentDescription));
  if (segments.size() > 1)
    violation("more than one segment description on <" + uri_ctx + ">");
  if (!segments.empty()) {
    const auto& sd = segments.front();
    if (!sd.is_iri()) violation("segment description must be a URI node");
    const auto bodies = g.objects(sd, iri(vocab::kRdfValue));
    if (bodies.size() != 1 || !bodies.front().is_literal())
      violation("segment description <" + sd.value +
                "> needs exactly one literal rdf:value");
    view.segment = SegmentDescription{sd.value, bodies.front().value};
  }
  return view;
}

}  // namespace

const char* to_string(TimeClass c) {
  switch (c) {
    case TimeClass::Timeless: return "Timeless";
    case TimeClass::UniformTime: return "UniformTime";
    case TimeClass::VariedTime: return "VariedTime";
  }
  return "?";
}

void validate(const AnnotationView& v) {
  require_uri(v.uri_a, "annotation");
  require_uri(v.content, "content");
  require_uri(v.predicate, "predicate");
  if (v.transcription) require_uri(*v.transcription, "transcription");
  if (v.targets.empty()) violation("annotation has no target");

  std::set<std::string> targets;
  for (const auto& t : v.targets) {
    require_uri(t, "target");
    if (!targets.insert(t).second) violation("duplicate target <" + t + ">");
  }

  std::set<std::string> nodes{v.uri_a};
  bool context_when = false;
  for (const auto& c : v.contexts) {
    require_uri(c.uri_ctx, "context");
    require_uri(c.about, "context subject");
    if (!nodes.insert(c.uri_ctx).second)
      violation("context node <" + c.uri_ctx + "> is not unique");
    if (c.role == ContextRole::Target && !targets.contains(c.about))
      violation("target context <" + c.uri_ctx + "> is about <" + c.about +
                ">, which is not a target");
    if (c.role == ContextRole::Content && c.about != v.content)
      violation("content context <" + c.uri_ctx + "> is about <" + c.about +
                ">, which is not the content");
    if (c.segment) {
      require_uri(c.segment->uri_sd, "segment description");
      if (!nodes.insert(c.segment->uri_sd).second)
        violation("segment description <" + c.segment->uri_sd +
                  "> is not unique");
    }
    context_when = context_when || c.when.has_value();
  }
  if (v.annotation_when && context_when)
    violation("oac:when on both the annotation and a context");
}

Graph build_annotation(const AnnotationView& v) {
  validate(v);
  const auto a = Term::iri(v.uri_a);
  const auto type = iri(vocab::kRdfType);
  Graph g;
  g.add(a, type, iri(oac::kAnnotation));
  g.add(a, iri(oac::kHasContent), Term::iri(v.content));
  for (const auto& t : v.targets) g.add(a, iri(oac::kHasTarget), Term::iri(t));
  g.add(a, iri(oac::kPredicate), Term::iri(v.predicate));
  if (v.annotation_when) g.add(a, iri(oac::kWhen), when_literal(*v.annotation_when));

  for (const auto& c : v.contexts) {
    const auto ctx = Term::iri(c.uri_ctx);
    g.add(a,
          iri(c.role == ContextRole::Target ? oac::kHasTargetContext
                                            : oac::kHasContentContext),
          ctx);
    g.add(ctx, type, iri(oac::kContext));
    g.add(ctx, iri(oac::kContextAbout), Term::iri(c.about));
    if (c.when) g.add(ctx, iri(oac::kWhen), when_literal(*c.when));
    if (c.segment) {
      const auto sd = Term::iri(c.segment->uri_sd);
      g.add(ctx, iri(oac::kHasSegmentDescription), sd);
      g.add(sd, type, iri(oac::kSegmentDescription));
      g.add(sd, iri(vocab::kRdfValue), Term::literal(c.segment->body));
    }
  }

  if (v.transcription) {
    const auto trn = Term::iri(*v.transcription);
    g.add(trn, type, iri(oac::kTranscription));
    g.add(trn, iri(oac::kTranscribes), a);
  }
  return g;
}

AnnotationView parse_annotation(const Graph& g, std::string_view uri_a) {
  const auto a = Term::iri(std::string(uri_a));
  if (!g.contains({a, iri(vocab::kRdfType), iri(oac::kAnnotation)}))
    violation("<" + a.value + "> is not typed oac:Annotation");

  AnnotationView v;
  v.uri_a = a.value;
  v.content = single_iri(g, a, oac::kHasContent, "oac:hasContent");
  for (const auto& t : g.objects(a, iri(oac::kHasTarget))) {
    if (!t.is_iri()) violation("oac:hasTarget object is a literal");
    v.targets.push_back(t.value);
  }
  if (v.targets.empty()) violation("<" + a.value + "> has no oac:hasTarget");

  const auto predicates = g.objects(a, iri(oac::kPredicate));
  if (predicates.size() > 1) violation("more than one oac:predicate");
  if (!predicates.empty()) {
    if (!predicates.front().is_iri()) violation("oac:predicate is a literal");
    v.predicate = predicates.front().value;
  }
  v.annotation_when = optional_when(g, a);

  const auto read_role = [&](std::string_view p, ContextRole role) {
    for (const auto& c : g.objects(a, iri(p))) {
      if (!c.is_iri()) violation("context object is a literal");
      v.contexts.push_back(read_context(g, c.value, role));
    }
  };
  read_role(oac::kHasTargetContext, ContextRole::Target);
  read_role(oac::kHasContentContext, ContextRole::Content);

  const auto trns = g.subjects(iri(oac::kTranscribes), a);
  if (trns.size() > 1) violation("more than one transcription of <" + a.value + ">");
  if (!trns.empty()) v.transcription = trns.front().value;

  v = canonicalize(std::move(v));
  validate(v);
  return v;
}

AnnotationView canonicalize(AnnotationView v) {
  std::sort(v.targets.begin(), v.targets.end());
  std::sort(v.contexts.begin(), v.contexts.end(),
            [](const ContextView& x, const ContextView& y) {
              return x.uri_ctx < y.uri_ctx;
            });
  return v;
}

TimeClass classify_time(const AnnotationView& v) {
  if (v.annotation_when) return TimeClass::UniformTime;
  for (const auto& c : v.contexts)
    if (c.when) return TimeClass::VariedTime;
  return TimeClass::Timeless;
}

AnnotationView rewrite_uniform_to_varied(const AnnotationView& v) {
  if (classify_time(v) != TimeClass::UniformTime)
    throw NotUniform("<" + v.uri_a + "> is " + to_string(classify_time(v)));

  std::set<std::string> taken{v.uri_a};
  for (const auto& c : v.contexts) {
    taken.insert(c.uri_ctx);
    if (c.segment) taken.insert(c.segment->uri_sd);
  }

  AnnotationView out = v;
  const Instant when = *out.annotation_when;
  out.annotation_when.reset();
  int next = 1;
  const auto situate = [&](const std::string& about, ContextRole role) {
    for (auto& c : out.contexts) {
      if (c.role == role && c.about == about) {
        c.when = when;
        return;
      }
    }
    std::string minted;
    do {
      minted = v.uri_a + "#ctx-" + std::to_string(next++);
    } while (taken.contains(minted));
    taken.insert(minted);
    out.contexts.push_back(ContextView{minted, about, role, when, std::nullopt});
  };
  for (const auto& t : v.targets) situate(t, ContextRole::Target);
  situate(v.content, ContextRole::Content);
  return out;
}

std::vector<TimeTuple> extract_time_tuples(const AnnotationView& v) {
  switch (classify_time(v)) {
    case TimeClass::Timeless:
      return {};
    case TimeClass::UniformTime:
      return extract_time_tuples(rewrite_uniform_to_varied(v));
    case TimeClass::VariedTime:
      break;
  }
  std::vector<TimeTuple> out;
  for (const auto& t : v.targets)
    for (const auto& c : v.contexts)
      if (c.role == ContextRole::Target && c.about == t && c.when)
        out.push_back({t, *c.when});
  for (const auto& c : v.contexts)
    if (c.role == ContextRole::Content && c.when)
      out.push_back({c.about, *c.when});
  return out;
}

std::pair<std::string, std::string> find_transcribed(const Graph& g) {
  const auto edges =
      g.match(std::nullopt, iri(oac::kTranscribes), std::nullopt);
  if (edges.size() != 1)
    throw MalformedTranscription("expected exactly one oac:transcribes triple, found " +
                                 std::to_string(edges.size()));
  if (!edges.front().object.is_iri())
    throw MalformedTranscription("oac:transcribes object is a literal");
  return {edges.front().subject.value, edges.front().object.value};
}

}  // namespace chronomark
