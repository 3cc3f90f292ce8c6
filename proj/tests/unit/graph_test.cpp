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

#include <algorithm>

#include "chronomark/errors.hpp"
#include "chronomark/graph.hpp"
#include "test_support.hpp"

namespace chronomark {
namespace {

using testing::Gen;

Triple iri3(const char* s, const char* p, const char* o) {
  return {Term::iri(s), Term::iri(p), Term::iri(o)};
}

/// Random triple over a small vocabulary so patterns actually hit.
Triple random_triple(Gen& g) {
  const auto node = [&](const char* prefix, int n) {
    return Term::iri(std::string("http://g.example/") + prefix +
                     std::to_string(g.between(0, n)));
  };
  Term o = g.coin(0.7) ? node("n", 40)
                       : Term::literal(g.text(), g.coin()
                                                     ? std::optional<std::string>(
                                                           "http://dt.example/x")
                                                     : std::nullopt);
  return {node("n", 40), node("p", 6), std::move(o)};
}

/// Every distinct triple once, in serialized-line order.
std::vector<Triple> canonical_order(std::vector<Triple> all) {
  std::vector<std::pair<std::string, Triple>> keyed;
  for (auto& t : all) keyed.emplace_back(to_line(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) {
                            return a.first == b.first;
                          }),
              keyed.end());
  std::vector<Triple> out;
  for (auto& [line, t] : keyed) out.push_back(std::move(t));
  return out;
}

std::vector<Triple> brute_match(const std::vector<Triple>& ordered,
                                const std::optional<Term>& s,
                                const std::optional<Term>& p,
                                const std::optional<Term>& o) {
  std::vector<Triple> out;
  for (const auto& t : ordered)
    if ((!s || t.subject == *s) && (!p || t.predicate == *p) &&
        (!o || t.object == *o))
      out.push_back(t);
  return out;
}

TEST(Graph, SetSemantics) {
  Graph g;
  EXPECT_TRUE(g.add(iri3("http://a", "http://b", "http://c")));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_FALSE(g.add(iri3("http://a", "http://b", "http://c")));
  EXPECT_EQ(g.size(), 1u);
  for (int i = 0; i < 10; ++i)
    g.add(Term::iri("http://a"), Term::iri("http://b"),
          Term::literal(std::to_string(i)));
  EXPECT_EQ(g.size(), 11u);
}

TEST(Graph, RejectsLiteralSubjectAndRelativeIris) {
  Graph g;
  EXPECT_THROW(g.add(Term::literal("x"), Term::iri("http://p"), Term::iri("http://o")),
               std::invalid_argument);
  EXPECT_THROW(g.add(Term::iri("http://s"), Term::literal("p"), Term::iri("http://o")),
               std::invalid_argument);
  EXPECT_THROW(g.add(iri3("relative", "http://p", "http://o")),
               std::invalid_argument);
}

TEST(Graph, MatchBasics) {
  Graph g;
  g.add(iri3("http://a", "http://b", "http://c"));
  g.add(iri3("http://a", "http://d", "http://c"));
  EXPECT_EQ(g.match(std::nullopt, std::nullopt, std::nullopt).size(), 2u);
  EXPECT_TRUE(g.match(std::nullopt, Term::iri("http://zzz"), std::nullopt).empty());
  EXPECT_EQ(g.match(Term::iri("http://a"), std::nullopt, Term::iri("http://c")).size(), 2u);
  EXPECT_TRUE(g.match(Term::iri("http://c"), std::nullopt, std::nullopt).empty());
}

TEST(Graph, EraseKeepsIndexesConsistent) {
  Graph g;
  g.add(iri3("http://a", "http://b", "http://c"));
  g.add(iri3("http://a", "http://b", "http://d"));
  EXPECT_TRUE(g.erase(iri3("http://a", "http://b", "http://c")));
  EXPECT_FALSE(g.erase(iri3("http://a", "http://b", "http://c")));
  EXPECT_EQ(g.match(Term::iri("http://a"), std::nullopt, std::nullopt).size(), 1u);
  EXPECT_TRUE(g.match(std::nullopt, std::nullopt, Term::iri("http://c")).empty());
}

TEST(Graph, MatchEqualsExhaustiveScanOnLargeGraph) {
  Gen g(11);
  std::vector<Triple> all;
  Graph graph;
  while (graph.size() < 10000) {
    auto t = random_triple(g);
    graph.add(t);
    all.push_back(std::move(t));
  }
  const auto ordered = canonical_order(all);
  for (int i = 0; i < 1000; ++i) {
    const auto probe = g.coin(0.8) ? all[g.between(0, all.size() - 1)]
                                   : random_triple(g);
    const std::optional<Term> s = g.coin() ? std::optional(probe.subject) : std::nullopt;
    const std::optional<Term> p = g.coin() ? std::optional(probe.predicate) : std::nullopt;
    const std::optional<Term> o = g.coin() ? std::optional(probe.object) : std::nullopt;
    ASSERT_EQ(graph.match(s, p, o), brute_match(ordered, s, p, o)) << i;
  }
}

TEST(TripleFormat, ParsesIrisAndTypedLiterals) {
  auto g = parse_triples("<http://a> <http://b> <http://c> .\n");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains(iri3("http://a", "http://b", "http://c")));

  const std::string line =
      "<http://a> <http://b> "
      "\"2010-01-22T01:00:02Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime> .";
  g = parse_triples(line);
  const auto t = g.triples().at(0);
  EXPECT_TRUE(t.object.is_literal());
  EXPECT_EQ(t.object.value, "2010-01-22T01:00:02Z");
  EXPECT_EQ(t.object.datatype, "http://www.w3.org/2001/XMLSchema#dateTime");
  EXPECT_EQ(serialize_triples(g), line + "\n");
}

TEST(TripleFormat, SkipsBlankLinesAndComments) {
  const auto g = parse_triples(
      "# a comment\n\n  <http://a> <http://b> \"x\" .\r\n\t\n<http://a> <http://b> \"y\" .");
  EXPECT_EQ(g.size(), 2u);
}

TEST(TripleFormat, ReportsLineNumbers) {
  const auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_triples(text);
    } catch (const MalformedTriple& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("<http://a> <http://b> <http://c>"), 1u);
  EXPECT_EQ(line_of("<http://a> <http://b> <http://c> .\n\n<http://a> <http://b> \"x\""), 3u);
  EXPECT_EQ(line_of("\"lit\" <http://b> <http://c> ."), 1u);
  EXPECT_EQ(line_of("<http://a> \"p\" <http://c> ."), 1u);
  EXPECT_EQ(line_of("<http://a> <http://b> \"unterminated ."), 1u);
  EXPECT_EQ(line_of("<http://a> <http://b> \"bad \\q escape\" ."), 1u);
  EXPECT_EQ(line_of("<a> <http://b> <http://c> ."), 1u);
  EXPECT_EQ(line_of("<http://a><http://b> <http://c> ."), 1u);
  EXPECT_EQ(line_of("<http://a> <http://b> <http://c> . extra"), 1u);
}

TEST(TripleFormat, RoundTripsAndReachesFixedPoint) {
  Gen g(12);
  for (int i = 0; i < 300; ++i) {
    Graph graph;
    const auto n = g.between(0, 30);
    for (std::int64_t k = 0; k < n; ++k) graph.add(random_triple(g));
    const auto text = serialize_triples(graph);
    const auto back = parse_triples(text);
    ASSERT_EQ(back, graph);
    ASSERT_EQ(serialize_triples(back), text);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    ASSERT_EQ(static_cast<std::size_t>(lines), graph.size());
  }
}

}  // namespace
}  // namespace chronomark
