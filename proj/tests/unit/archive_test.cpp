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

#include <gtest/gtest.h>

#include <set>

#include "chronomark/archive.hpp"
#include "chronomark/errors.hpp"
#include "chronomark/vocab.hpp"
#include "test_support.hpp"

namespace chronomark {
namespace {

using testing::Gen;
using testing::random_timeline;
using testing::scan_rep;

constexpr const char* kBase = "http://archive.example/ta";
constexpr const char* kUri = "http://lanlsource.lanl.gov/hello";

ResourceTimeline timeline(std::vector<std::pair<std::int64_t, std::string>> vs) {
  ResourceTimeline tl{kUri, {}};
  for (auto& [t, b] : vs) tl.versions.push_back({Instant{t}, std::move(b)});
  return tl;
}

TimeInterval iv(std::int64_t a, std::int64_t b) {
  return TimeInterval::make(Instant{a}, Instant{b});
}

/// Latest snapshot not after t, else earliest; by linear scan.
const MementoRecord& scan_latest_not_after(const std::vector<MementoRecord>& ms,
                                           Instant t) {
  const MementoRecord* best = &ms.front();
  for (const auto& m : ms)
    if (m.snapshot_time <= t) best = &m;
  return *best;
}

TEST(Timeline, Validation) {
  EXPECT_NO_THROW(timeline({{0, "A"}, {100, "B"}}).validate());
  EXPECT_THROW(timeline({}).validate(), InvalidTimeline);
  EXPECT_THROW(timeline({{0, "A"}, {0, "B"}}).validate(), InvalidTimeline);
  EXPECT_THROW(timeline({{0, "A"}, {10, "A"}}).validate(), InvalidTimeline);
  EXPECT_THROW((ResourceTimeline{"hello", {{Instant{0}, "A"}}}).validate(),
               InvalidTimeline);
}

TEST(RepAt, PicksLatestVersionNotAfter) {
  const auto tl = timeline({{0, "A"}, {100, "B"}});
  EXPECT_EQ(rep_at(tl, Instant{50}), "A");
  EXPECT_EQ(rep_at(tl, Instant{100}), "B");
  EXPECT_EQ(rep_at(tl, Instant{99}), "A");
  EXPECT_EQ(rep_at(tl, Instant{0}), "A");
  EXPECT_THROW(rep_at(tl, Instant{-1}), BeforeCreation);
}

TEST(RepAt, AgreesWithLinearScan) {
  Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const auto tl = random_timeline(g, kUri, g.between(1, 10));
    for (int k = 0; k < 20; ++k) {
      const Instant t{g.between(-10, tl.versions.back().valid_from.seconds + 60)};
      const auto expect = scan_rep(tl, t);
      if (expect)
        ASSERT_EQ(rep_at(tl, t), *expect);
      else
        ASSERT_THROW(rep_at(tl, t), BeforeCreation);
    }
  }
}

TEST(TransactionalCapture, SpansTileTheTimeline) {
  const auto a = transactional_capture(
      timeline({{0, "A"}, {100, "B"}, {200, "C"}}), Instant{300}, kBase);
  const auto& ms = a.mementos(kUri);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0].span, iv(0, 99));
  EXPECT_EQ(ms[1].span, iv(100, 199));
  EXPECT_EQ(ms[2].span, iv(200, 300));
  EXPECT_EQ(ms[1].uri_m, std::string(kBase) + "/19700101000140/" + kUri);
  EXPECT_EQ(ms[1].body, "B");
  EXPECT_FALSE(ms[0].observed_span);
}

TEST(TransactionalCapture, SingleVersion) {
  const auto a = transactional_capture(timeline({{5, "A"}}), Instant{9}, kBase);
  ASSERT_EQ(a.mementos(kUri).size(), 1u);
  EXPECT_EQ(a.mementos(kUri)[0].span, iv(5, 9));
  EXPECT_THROW(transactional_capture(timeline({{5, "A"}}), Instant{4}, kBase),
               OrderViolation);
}

TEST(TransactionalCapture, EverySpanSecondMatchesRepAt) {
  Gen g(32);
  for (int i = 0; i < 100; ++i) {
    const auto tl = random_timeline(g, kUri, g.between(1, 8), 30);
    const Instant now{tl.versions.back().valid_from.seconds + g.between(0, 30)};
    const auto a = transactional_capture(tl, now, kBase);
    for (const auto& m : a.mementos(kUri))
      for (auto t = m.span->start; t <= m.span->end; t = Instant{t.seconds + 1})
        ASSERT_EQ(scan_rep(tl, t), m.body);
  }
}

TEST(CrawlerCapture, CollapsesRuns) {
  const auto a = crawler_capture(timeline({{0, "A"}, {100, "B"}}),
                                 {Instant{10}, Instant{50}, Instant{150}}, kBase);
  const auto& ms = a.mementos(kUri);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].body, "A");
  EXPECT_EQ(ms[0].snapshot_time, Instant{10});
  EXPECT_EQ(ms[0].observed_span, iv(10, 50));
  EXPECT_EQ(ms[0].observations, 2);
  EXPECT_EQ(ms[1].body, "B");
  EXPECT_EQ(ms[1].observed_span, iv(150, 150));
  EXPECT_EQ(ms[1].observations, 1);
  EXPECT_FALSE(ms[0].span);
}

TEST(CrawlerCapture, EdgeCases) {
  const auto tl = timeline({{0, "A"}, {100, "B"}});
  EXPECT_EQ(crawler_capture(tl, {Instant{3}}, kBase).mementos(kUri)[0].observations, 1);
  const auto one = crawler_capture(tl, {Instant{1}, Instant{2}, Instant{3}, Instant{4}}, kBase);
  ASSERT_EQ(one.mementos(kUri).size(), 1u);
  EXPECT_EQ(one.mementos(kUri)[0].observations, 4);
  EXPECT_THROW(crawler_capture(tl, {Instant{-1}, Instant{5}}, kBase), BeforeCreation);
  EXPECT_THROW(crawler_capture(tl, {Instant{5}, Instant{5}}, kBase), OrderViolation);
}

TEST(CrawlerCapture, SoundAtEveryObservation) {
  Gen g(33);
  for (int i = 0; i < 200; ++i) {
    const auto tl = random_timeline(g, kUri, g.between(1, 8), 40);
    std::vector<Instant> crawls;
    for (auto t = tl.versions.front().valid_from.seconds;
         t < tl.versions.back().valid_from.seconds + 40; ++t)
      if (g.coin(0.2)) crawls.push_back(Instant{t});
    if (crawls.empty()) continue;
    const auto a = crawler_capture(tl, crawls, kBase);
    std::int64_t observed = 0;
    for (const auto& m : a.mementos(kUri)) {
      ASSERT_EQ(scan_rep(tl, m.snapshot_time), m.body);
      for (const auto c : crawls)
        if (m.observed_span->contains(c)) ASSERT_EQ(scan_rep(tl, c), m.body);
      observed += *m.observations;
    }
    ASSERT_EQ(observed, static_cast<std::int64_t>(crawls.size()));
  }
}

TEST(ResolveTimegate, TransactionalContainmentAndClamp) {
  const auto a = transactional_capture(timeline({{0, "A"}, {100, "B"}}),
                                       Instant{199}, kBase);
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{150}).body, "B");
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{99}).body, "A");
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{-50}).body, "A");
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{5000}).body, "B");
  EXPECT_THROW(resolve_timegate(a, "http://unknown.example/", Instant{1}),
               UnknownResource);
}

TEST(ResolveTimegate, CrawlerLatestNotAfter) {
  const auto tl = timeline({{0, "A"}, {150, "B"}, {250, "C"}});
  const auto a = crawler_capture(tl, {Instant{100}, Instant{200}, Instant{300}}, kBase);
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{250}).snapshot_time, Instant{200});
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{50}).snapshot_time, Instant{100});
  EXPECT_EQ(resolve_timegate(a, kUri, Instant{300}).snapshot_time, Instant{300});
}

TEST(ResolveTimegate, AgreesWithScanOracle) {
  Gen g(34);
  for (int i = 0; i < 1000; ++i) {
    const auto tl = random_timeline(g, kUri, g.between(1, 8), 40);
    const auto last = tl.versions.back().valid_from.seconds;
    Archive a(ArchiveKind::Transactional, kBase);
    if (g.coin()) {
      a = transactional_capture(tl, Instant{last + 20}, kBase);
    } else {
      std::vector<Instant> crawls;
      for (auto t = tl.versions.front().valid_from.seconds; t <= last + 20; ++t)
        if (g.coin(0.15)) crawls.push_back(Instant{t});
      if (crawls.empty()) crawls.push_back(tl.versions.front().valid_from);
      a = crawler_capture(tl, crawls, kBase);
    }
    const auto& ms = a.mementos(kUri);
    const Instant t{g.between(tl.versions.front().valid_from.seconds - 20, last + 40)};
    const auto& got = resolve_timegate(a, kUri, t);
    if (a.kind() == ArchiveKind::Transactional) {
      const MementoRecord* expect = nullptr;
      for (const auto& m : ms)
        if (m.span->contains(t)) expect = &m;
      if (!expect) expect = t < ms.front().snapshot_time ? &ms.front() : &ms.back();
      ASSERT_EQ(got, *expect);
    } else {
      ASSERT_EQ(got, scan_latest_not_after(ms, t));
    }
  }
}

TEST(Adjacent, Neighbours) {
  const auto a = transactional_capture(
      timeline({{0, "A"}, {100, "B"}, {200, "C"}}), Instant{300}, kBase);
  const auto& ms = a.mementos(kUri);
  auto n = adjacent(a, ms[1]);
  EXPECT_EQ(n.prev, ms[0]);
  EXPECT_EQ(n.next, ms[2]);
  n = adjacent(a, ms[0]);
  EXPECT_FALSE(n.prev);
  EXPECT_EQ(n.next, ms[1]);

  const auto solo = transactional_capture(timeline({{0, "A"}}), Instant{1}, kBase);
  n = adjacent(solo, solo.mementos(kUri)[0]);
  EXPECT_FALSE(n.prev);
  EXPECT_FALSE(n.next);

  EXPECT_THROW(adjacent(solo, ms[1]), NotInArchive);
}

TEST(Archive, InsertEnforcesInvariants) {
  Archive a(ArchiveKind::Crawler, kBase);
  MementoRecord m{"http://archive.example/m1", kUri, Instant{5}, "x",
                  std::nullopt, iv(5, 9), 2};
  a.insert(m);
  EXPECT_THROW(a.insert(m), std::invalid_argument);
  auto same_time = m;
  same_time.uri_m = "http://archive.example/m2";
  EXPECT_THROW(a.insert(same_time), std::invalid_argument);
  auto both = m;
  both.uri_m = "http://archive.example/m3";
  both.snapshot_time = Instant{20};
  both.observed_span = iv(20, 21);
  both.span = iv(20, 21);
  EXPECT_THROW(a.insert(both), std::invalid_argument);
  auto outside = m;
  outside.uri_m = "http://archive.example/m4";
  outside.snapshot_time = Instant{30};
  outside.observed_span = iv(31, 40);
  EXPECT_THROW(a.insert(outside), std::invalid_argument);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_NE(a.find("http://archive.example/m1"), nullptr);
  EXPECT_THROW(a.absorb(Archive(ArchiveKind::Transactional, kBase)),
               std::invalid_argument);
}

TEST(TimeMap, TransactionalSpans) {
  const auto a = transactional_capture(timeline({{0, "A"}, {100, "B"}}),
                                       Instant{300}, kBase);
  const auto tm = timemap(a, kUri);
  namespace mem = vocab::mem;
  const auto iri = [](std::string_view v) { return Term::iri(std::string(v)); };

  // SELECT ?uri_r WHERE { ?uri_m mem:mementoFor ?uri_r . ?uri_r a mem:OriginalResource }
  std::set<std::string> originals;
  for (const auto& e : tm.match(std::nullopt, iri(mem::kMementoFor), std::nullopt))
    if (tm.contains({e.object, iri(vocab::kRdfType), iri(mem::kOriginalResource)}))
      originals.insert(e.object.value);
  EXPECT_EQ(originals, std::set<std::string>{kUri});

  // SELECT ?start ?end WHERE { <m> mem:validOver ?span . ?span mem:start ?start .
  //                            ?span mem:end ?end }
  const auto& second = a.mementos(kUri)[1];
  const auto spans = tm.objects(Term::iri(second.uri_m), iri(mem::kValidOver));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(tm.objects(spans[0], iri(mem::kStart)).at(0).value,
            "1970-01-01T00:01:40Z");
  EXPECT_EQ(tm.objects(spans[0], iri(mem::kEnd)).at(0).value,
            "1970-01-01T00:05:00Z");
  EXPECT_EQ(timemap_originals(tm), std::vector<std::string>{kUri});
  EXPECT_THROW(timemap(a, "http://unknown.example/"), UnknownResource);
}

TEST(TimeMap, CrawlerObservations) {
  const auto a = crawler_capture(timeline({{0, "A"}, {100, "B"}}),
                                 {Instant{10}, Instant{50}}, kBase);
  const auto text = serialize_triples(timemap(a, kUri));
  EXPECT_NE(text.find("<http://chronomark.invalid/memento/ns#observations> \"2\" ."),
            std::string::npos);
  EXPECT_NE(text.find("observedOver"), std::string::npos);
  EXPECT_EQ(text.find("validOver"), std::string::npos);
}

TEST(TimeMap, RoundTripsThroughSerialization) {
  Gen g(35);
  for (int i = 0; i < 300; ++i) {
    const auto tl = random_timeline(g, kUri, g.between(1, 8), 40);
    const auto last = tl.versions.back().valid_from.seconds;
    Archive a = transactional_capture(tl, Instant{last + 5}, kBase);
    if (g.coin()) {
      std::vector<Instant> crawls;
      for (auto t = tl.versions.front().valid_from.seconds; t <= last + 5; ++t)
        if (g.coin(0.2)) crawls.push_back(Instant{t});
      if (crawls.empty()) continue;
      a = crawler_capture(tl, crawls, kBase);
    }
    const auto back =
        timemap_entries(parse_triples(serialize_triples(timemap(a, kUri))), kUri);
    auto expect = a.mementos(kUri);
    for (auto& m : expect) m.body.clear();
    ASSERT_EQ(back, expect);
  }
}

}  // namespace
}  // namespace chronomark
