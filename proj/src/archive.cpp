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

#include "chronomark/archive.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"
#include "chronomark/vocab.hpp"

namespace chronomark {

namespace {

namespace mem = vocab::mem;

Term iri(std::string_view v) { return Term::iri(std::string(v)); }

Term datetime_literal(Instant t) {
  return Term::literal(format_xsd_datetime(t), std::string(vocab::kXsdDateTime));
}

Instant read_datetime(const Graph& g, const Term& s, std::string_view p) {
  const auto objs = g.objects(s, iri(p));
  if (objs.size() != 1 || !objs.front().is_literal())
    throw MalformedTimeMap("expected one dateTime literal for <" + s.value +
                                 "> <" + std::string(p) + ">");
  return parse_xsd_datetime(objs.front().value);
}

std::optional<TimeInterval> read_span(const Graph& g, const Term& m,
                                      std::string_view p) {
  const auto spans = g.objects(m, iri(p));
  if (spans.empty()) return std::nullopt;
  if (spans.size() > 1 || !spans.front().is_iri())
    throw MalformedTimeMap("malformed span on <" + m.value + ">");
  return TimeInterval::make(read_datetime(g, spans.front(), mem::kStart),
                            read_datetime(g, spans.front(), mem::kEnd));
}

}  // namespace

void ResourceTimeline::validate() const {
  if (!uri::is_absolute(uri_r))
    throw InvalidTimeline("not an absolute URI: '" + uri_r + "'");
  if (versions.empty()) throw InvalidTimeline("<" + uri_r + "> has no versions");
  for (std::size_t i = 1; i < versions.size(); ++i) {
    if (versions[i].valid_from <= versions[i - 1].valid_from)
      throw InvalidTimeline("<" + uri_r + "> versions are not strictly increasing");
    if (versions[i].body == versions[i - 1].body)
      throw InvalidTimeline("<" + uri_r + "> has identical consecutive bodies");
  }
}

std::size_t ResourceTimeline::version_index_at(Instant t) const {
  const auto it = std::upper_bound(
      versions.begin(), versions.end(), t,
      [](Instant x, const VersionRecord& v) { return x < v.valid_from; });
  if (it == versions.begin())
    throw BeforeCreation("<" + uri_r + "> did not exist at " +
                         format_xsd_datetime(t));
  return static_cast<std::size_t>(it - versions.begin()) - 1;
}

TimeInterval ResourceTimeline::version_span(std::size_t i, Instant now) const {
  const auto end = i + 1 < versions.size()
                       ? Instant{versions[i + 1].valid_from.seconds - 1}
                       : now;
  return TimeInterval::make(versions.at(i).valid_from, end);
}

const std::string& rep_at(const ResourceTimeline& tl, Instant t) {
  return tl.versions[tl.version_index_at(t)].body;
}

const char* to_string(ArchiveKind k) {
  return k == ArchiveKind::Transactional ? "transactional" : "crawler";
}

ArchiveKind parse_archive_kind(std::string_view s) {
  if (s == "transactional") return ArchiveKind::Transactional;
  if (s == "crawler") return ArchiveKind::Crawler;
  throw std::invalid_argument("unknown archive kind '" + std::string(s) + "'");
}

std::string memento_uri(std::string_view archive_base, Instant snapshot,
                        std::string_view uri_r) {
  std::string out(archive_base);
  out += '/';
  out += format_archive_timestamp(snapshot);
  out += '/';
  out += uri_r;
  return out;
}

bool covers(const MementoRecord& m, Instant t) {
  if (m.span) return m.span->contains(t);
  return m.snapshot_time <= t;
}

void Archive::insert(MementoRecord m) {
  if (m.span && m.observed_span)
    throw std::invalid_argument("memento has both a validity and an observed span");
  if (m.span && !m.span->contains(m.snapshot_time))
    throw std::invalid_argument("snapshot outside validity span");
  if (m.observed_span && !m.observed_span->contains(m.snapshot_time))
    throw std::invalid_argument("snapshot outside observed span");
  if (m.observations && *m.observations < 1)
    throw std::invalid_argument("observations must be positive");
  if (by_uri_m_.contains(m.uri_m))
    throw std::invalid_argument("duplicate memento <" + m.uri_m + ">");

  auto& series = series_[m.uri_r];
  const auto pos = std::lower_bound(
      series.begin(), series.end(), m.snapshot_time,
      [](const MementoRecord& x, Instant t) { return x.snapshot_time < t; });
  if (pos != series.end() && pos->snapshot_time == m.snapshot_time)
    throw std::invalid_argument("duplicate snapshot time for <" + m.uri_r + ">");
  by_uri_m_.emplace(m.uri_m, std::make_pair(m.uri_r, m.snapshot_time));
  series.insert(pos, std::move(m));
}

void Archive::absorb(const Archive& other) {
  if (other.kind_ != kind_)
    throw std::invalid_argument("cannot merge a " + std::string(to_string(other.kind_)) +
                                " archive into a " + to_string(kind_) + " one");
  for (const auto& [uri_r, series] : other.series_)
    for (const auto& m : series) insert(m);
}

void Archive::forget(std::string_view uri_r) {
  const auto it = series_.find(uri_r);
  if (it == series_.end()) return;
  for (const auto& m : it->second) by_uri_m_.erase(m.uri_m);
  series_.erase(it);
}

bool Archive::has(std::string_view uri_r) const {
  const auto it = series_.find(uri_r);
  return it != series_.end() && !it->second.empty();
}

const std::vector<MementoRecord>& Archive::mementos(std::string_view uri_r) const {
  const auto it = series_.find(uri_r);
  if (it == series_.end() || it->second.empty())
    throw UnknownResource("no mementos for <" + std::string(uri_r) + ">");
  return it->second;
}

std::vector<std::string> Archive::resources() const {
  std::vector<std::string> out;
  for (const auto& [uri_r, series] : series_)
    if (!series.empty()) out.push_back(uri_r);
  return out;
}

std::size_t Archive::size() const { return by_uri_m_.size(); }

const MementoRecord* Archive::find(std::string_view uri_m) const {
  const auto it = by_uri_m_.find(uri_m);
  if (it == by_uri_m_.end()) return nullptr;
  const auto& series = series_.find(it->second.first)->second;
  const auto pos = std::lower_bound(
      series.begin(), series.end(), it->second.second,
      [](const MementoRecord& x, Instant t) { return x.snapshot_time < t; });
  return &*pos;
}

Archive transactional_capture(const ResourceTimeline& tl, Instant now,
                              std::string_view archive_base) {
  tl.validate();
  if (now < tl.versions.back().valid_from)
    throw OrderViolation("capture time precedes the last version of <" +
                         tl.uri_r + ">");
  Archive a(ArchiveKind::Transactional, std::string(archive_base));
  for (std::size_t i = 0; i < tl.versions.size(); ++i) {
    const auto& v = tl.versions[i];
    MementoRecord m;
    m.uri_m = memento_uri(archive_base, v.valid_from, tl.uri_r);
    m.uri_r = tl.uri_r;
    m.snapshot_time = v.valid_from;
    m.body = v.body;
    m.span = tl.version_span(i, now);
    a.insert(std::move(m));
  }
  return a;
}

Archive crawler_capture(const ResourceTimeline& tl,
                        const std::vector<Instant>& crawls,
                        std::string_view archive_base) {
  tl.validate();
  for (std::size_t i = 1; i < crawls.size(); ++i)
    if (crawls[i] <= crawls[i - 1])
      throw OrderViolation("crawl instants must be strictly increasing");

  Archive a(ArchiveKind::Crawler, std::string(archive_base));
  std::optional<MementoRecord> run;
  const auto flush = [&] {
    if (run) a.insert(std::move(*run));
    run.reset();
  };
  for (const auto t : crawls) {
    const auto& body = rep_at(tl, t);
    if (run && run->body == body) {
      run->observed_span->end = t;
      ++*run->observations;
      continue;
    }
    flush();
    run = MementoRecord{memento_uri(archive_base, t, tl.uri_r),
                        tl.uri_r,
                        t,
                        body,
                        std::nullopt,
                        TimeInterval{t, t},
                        1};
  }
  flush();
  return a;
}

const MementoRecord& resolve_timegate(const Archive& a, std::string_view uri_r,
                                      Instant t) {
  const auto& series = a.mementos(uri_r);
  // Latest snapshot not after t; the earliest memento when t precedes all.
  auto it = std::upper_bound(
      series.begin(), series.end(), t,
      [](Instant x, const MementoRecord& m) { return x < m.snapshot_time; });
  if (it == series.begin()) return series.front();
  // Transactional spans start at their snapshot and tile the timeline, so
  // this is also the memento whose span contains t whenever one does.
  return *std::prev(it);
}

Neighbors adjacent(const Archive& a, const MementoRecord& m) {
  const auto* found = a.find(m.uri_m);
  if (!found || found->uri_r != m.uri_r)
    throw NotInArchive("<" + m.uri_m + "> is not in the archive");
  const auto& series = a.mementos(m.uri_r);
  const auto i = static_cast<std::size_t>(found - series.data());
  Neighbors n;
  if (i > 0) n.prev = series[i - 1];
  if (i + 1 < series.size()) n.next = series[i + 1];
  return n;
}

Graph timemap(const Archive& a, std::string_view uri_r) {
  const auto& series = a.mementos(uri_r);
  const auto original = Term::iri(std::string(uri_r));
  Graph g;
  g.add(original, iri(vocab::kRdfType), iri(mem::kOriginalResource));
  for (const auto& m : series) {
    const auto node = Term::iri(m.uri_m);
    g.add(node, iri(mem::kMementoFor), original);
    g.add(node, iri(mem::kMementoDatetime), datetime_literal(m.snapshot_time));
    const auto emit_span = [&](std::string_view p, const TimeInterval& span) {
      const auto span_node = Term::iri(m.uri_m + "#span");
      g.add(node, iri(p), span_node);
      g.add(span_node, iri(mem::kStart), datetime_literal(span.start));
      g.add(span_node, iri(mem::kEnd), datetime_literal(span.end));
    };
    if (m.span) emit_span(mem::kValidOver, *m.span);
    if (m.observed_span) emit_span(mem::kObservedOver, *m.observed_span);
    if (m.observations)
      g.add(node, iri(mem::kObservations),
            Term::literal(std::to_string(*m.observations)));
  }
  return g;
}

std::vector<MementoRecord> timemap_entries(const Graph& tm,
                                           std::string_view uri_r) {
  const auto original = Term::iri(std::string(uri_r));
  std::vector<MementoRecord> out;
  for (const auto& node : tm.subjects(iri(mem::kMementoFor), original)) {
    MementoRecord m;
    m.uri_m = node.value;
    m.uri_r = std::string(uri_r);
    m.snapshot_time = read_datetime(tm, node, mem::kMementoDatetime);
    m.span = read_span(tm, node, mem::kValidOver);
    m.observed_span = read_span(tm, node, mem::kObservedOver);
    const auto obs = tm.objects(node, iri(mem::kObservations));
    if (!obs.empty()) {
      std::int64_t n = 0;
      const auto& text = obs.front().value;
      const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc{} || p != text.data() + text.size() || n < 1)
        throw MalformedTimeMap("bad mem:observations on <" + m.uri_m + ">");
      m.observations = n;
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.snapshot_time < y.snapshot_time;
  });
  return out;
}

std::vector<std::string> timemap_originals(const Graph& tm) {
  std::vector<std::string> out;
  for (const auto& s :
       tm.subjects(iri(vocab::kRdfType), iri(mem::kOriginalResource)))
    out.push_back(s.value);
  return out;
}

}  // namespace chronomark
