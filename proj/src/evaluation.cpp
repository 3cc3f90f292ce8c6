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

#include "chronomark/evaluation.hpp"

#include <cinttypes>
#include <cstdio>
#include <random>
#include <set>

#include "chronomark/collection.hpp"
#include "chronomark/discovery.hpp"
#include "chronomark/errors.hpp"
#include "chronomark/graph.hpp"

namespace chronomark {

namespace {

constexpr std::int64_t kEpoch = 1262304000;  // 2010-01-01T00:00:00Z
constexpr std::string_view kTransactionalBase = "http://transactional.invalid/ta";
constexpr std::string_view kCrawlerBase = "http://crawler.invalid/ia";

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag,
                       std::uint64_t a = 0, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

std::int64_t between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<LinkEntry> neighbour_links(const Archive& a, const MementoRecord& m) {
  std::vector<LinkEntry> links{{m.uri_r, "original", {}}};
  const auto n = adjacent(a, m);
  if (n.prev)
    links.push_back({n.prev->uri_m, "prev-memento",
                     {{"datetime", format_http_datetime(n.prev->snapshot_time)}}});
  if (n.next)
    links.push_back({n.next->uri_m, "next-memento",
                     {{"datetime", format_http_datetime(n.next->snapshot_time)}}});
  return links;
}

void score(StrategyStats& s, const MementoAnnotations& found, const TimeInterval& truth,
           const std::set<std::string>& relevant) {
  ++s.mementos;
  s.jaccard_sum += jaccard(found.estimate.interval, truth);
  s.retrieved += found.matches.size();
  s.relevant += relevant.size();
  for (const auto& e : found.matches) s.hits += relevant.count(e.uri_trn);
}

void append(std::string& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6f\n", key, v);
  out += buf;
}

void append(std::string& out, const char* key, std::size_t v) {
  out += key;
  out += '=';
  out += std::to_string(v);
  out += '\n';
}

void append_strategy(std::string& out, const std::string& name, const StrategyStats& s) {
  append(out, (name + ".mementos").c_str(), s.mementos);
  append(out, (name + ".jaccard").c_str(), s.mean_jaccard());
  append(out, (name + ".q2.precision").c_str(), s.precision());
  append(out, (name + ".q2.recall").c_str(), s.recall());
}

}  // namespace

void ScenarioSpec::validate() const {
  if (timelines < 1) throw InvalidScenario("timelines must be at least 1");
  if (min_versions < 1) throw InvalidScenario("min-versions must be at least 1");
  if (max_versions < min_versions)
    throw InvalidScenario("max-versions is below min-versions");
  if (annotations < 1) throw InvalidScenario("annotations must be at least 1");
  if (trials < 1) throw InvalidScenario("trials must be at least 1");
  if (!(min_density > 0 && min_density <= 1) || !(max_density > 0 && max_density <= 1))
    throw InvalidScenario("crawl densities must lie in (0, 1]");
  if (max_density < min_density)
    throw InvalidScenario("max-density is below min-density");
}

Scenario generate_scenario(std::uint64_t seed, const std::string& uri_r, int versions,
                           double density, int annotations) {
  if (versions < 1 || annotations < 0 || !(density > 0 && density <= 1))
    throw InvalidScenario("bad scenario parameters");
  Scenario s;
  s.timeline.uri_r = uri_r;

  auto rng = stream(seed, 1);
  Instant t{kEpoch + between(rng, 0, 10'000'000)};
  for (int i = 0; i < versions; ++i) {
    if (i > 0) t = Instant{t.seconds + between(rng, 100, 1000)};
    s.timeline.versions.push_back(
        {t, "<p>version " + std::to_string(i) + " of " + uri_r + " #" +
                std::to_string(between(rng, 0, 1'000'000)) + "</p>"});
  }
  s.now = Instant{t.seconds + between(rng, 100, 1000)};

  auto crawl_rng = stream(seed, 2);
  std::geometric_distribution<std::int64_t> gap(density);
  const auto first = s.timeline.versions.front().valid_from;
  for (std::int64_t c = first.seconds + gap(crawl_rng); c <= s.now.seconds;
       c += 1 + gap(crawl_rng))
    s.crawls.push_back(Instant{c});

  auto ann_rng = stream(seed, 3);
  for (int k = 0; k < annotations; ++k) {
    const auto id = std::to_string(k);
    AnnotationView v;
    v.uri_a = uri_r + "#annotation-" + id;
    v.content = uri_r + "#note-" + id;
    v.targets = {uri_r};
    v.contexts.push_back({v.uri_a + "-ctx", uri_r, ContextRole::Target,
                          Instant{between(ann_rng, first.seconds, s.now.seconds)},
                          std::nullopt});
    v.transcription = uri_r + "#transcription-" + id;
    s.annotations.push_back(std::move(v));
  }
  return s;
}

double StrategyStats::mean_jaccard() const {
  return mementos == 0 ? 0.0 : jaccard_sum / static_cast<double>(mementos);
}

double StrategyStats::precision() const { return ratio(hits, retrieved); }

double StrategyStats::recall() const { return ratio(hits, relevant); }

double EvaluationReport::q1_fidelity() const {
  return ratio(q1_faithful, q1_resolutions - q1_clamped);
}

std::string EvaluationReport::to_text() const {
  std::string out;
  out += "seed=" + std::to_string(spec.seed) + "\n";
  append(out, "trials", static_cast<std::size_t>(spec.trials));
  append(out, "timelines", timelines);
  append_strategy(out, "valid", valid);
  if (!spec.transactional_only) {
    append_strategy(out, "observed", observed);
    append_strategy(out, "approximate", approximate);
    append(out, "approximate.contains_snapshot",
           ratio(approximate_contains_snapshot, approximate.mementos));
  }
  append(out, "q1.resolutions", q1_resolutions);
  append(out, "q1.clamped", q1_clamped);
  append(out, "q1.faithful", q1_faithful);
  append(out, "q1.fidelity", q1_fidelity());
  append(out, "q1.control.edited", q1_edited);
  append(out, "q1.control.differs", q1_control_differs);
  return out;
}

EvaluationReport evaluate(const ScenarioSpec& spec) {
  spec.validate();
  EvaluationReport report;
  report.spec = spec;

  for (int trial = 0; trial < spec.trials; ++trial) {
    for (int i = 0; i < spec.timelines; ++i) {
      auto rng = stream(spec.seed, 0, static_cast<std::uint64_t>(trial),
                        static_cast<std::uint64_t>(i));
      const int versions = static_cast<int>(between(rng, spec.min_versions, spec.max_versions));
      const double density =
          std::uniform_real_distribution<double>(spec.min_density, spec.max_density)(rng);
      const auto uri_r = "http://site" + std::to_string(i) + ".example/trial" +
                         std::to_string(trial) + "/page";
      const auto s = generate_scenario(rng(), uri_r, versions, density, spec.annotations);
      const auto& tl = s.timeline;
      ++report.timelines;

      Collection collection;
      for (const auto& v : s.annotations)
        collection.ingest(*v.transcription, serialize_triples(build_annotation(v)));

      // Ground truth: which annotations fall inside each version's span.
      std::vector<std::set<std::string>> relevant(tl.versions.size());
      for (const auto& v : s.annotations) {
        const auto when = *v.contexts.front().when;
        relevant[tl.version_index_at(when)].insert(*v.transcription);
      }

      const auto ta = transactional_capture(tl, s.now, kTransactionalBase);
      const auto ta_map = timemap(ta, uri_r);
      for (const auto& m : ta.mementos(uri_r)) {
        const auto idx = tl.version_index_at(m.snapshot_time);
        score(report.valid,
              annotations_for_memento(m.uri_m, neighbour_links(ta, m), m.snapshot_time,
                                      &ta_map, collection, s.now),
              tl.version_span(idx, s.now), relevant[idx]);
      }

      const auto gate = archive_gate(ta);
      for (const auto& v : s.annotations) {
        const auto when = *v.contexts.front().when;
        const auto& annotated = rep_at(tl, when);
        for (const auto& r : reconstruct(v, gate, s.now).resolutions) {
          ++report.q1_resolutions;
          if (r.clamped) {
            ++report.q1_clamped;
          } else if (r.body == annotated) {
            ++report.q1_faithful;
          }
        }
        if (tl.version_index_at(when) + 1 < tl.versions.size()) {
          ++report.q1_edited;
          if (rep_at(tl, s.now) != annotated) ++report.q1_control_differs;
        }
      }

      if (spec.transactional_only || s.crawls.empty()) continue;
      const auto ia = crawler_capture(tl, s.crawls, kCrawlerBase);
      const auto ia_map = timemap(ia, uri_r);
      for (const auto& m : ia.mementos(uri_r)) {
        const auto idx = tl.version_index_at(m.snapshot_time);
        const auto truth = tl.version_span(idx, s.now);
        const auto links = neighbour_links(ia, m);
        score(report.observed,
              annotations_for_memento(m.uri_m, links, m.snapshot_time, &ia_map,
                                      collection, s.now),
              truth, relevant[idx]);
        const auto approx = annotations_for_memento(m.uri_m, links, m.snapshot_time,
                                                    nullptr, collection, s.now);
        score(report.approximate, approx, truth, relevant[idx]);
        if (approx.estimate.interval.contains(m.snapshot_time))
          ++report.approximate_contains_snapshot;
      }
    }
  }
  return report;
}

}  // namespace chronomark
