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
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chronomark {

struct Term {
  enum class Kind { Iri, Literal };

  Kind kind = Kind::Iri;
  std::string value;
  std::optional<std::string> datatype;  // literals only

  static Term iri(std::string value);
  static Term literal(std::string value,
                      std::optional<std::string> datatype = std::nullopt);

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_literal() const { return kind == Kind::Literal; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Line form of a single term / triple, e.g. `<http://a> <http://b> "x" .`
std::string to_string(const Term& t);
std::string to_line(const Triple& t);

/// A set of triples with per-position indexes. Iteration and match results
/// come back ordered by serialized line.
class Graph {
 public:
  /// Inserts `t`; returns false when it was already present. Throws
  /// std::invalid_argument if a subject or predicate is a literal or an IRI
  /// term is not an absolute URI.
  bool add(const Triple& t);
  bool add(Term s, Term p, Term o) {
    return add(Triple{std::move(s), std::move(p), std::move(o)});
  }
  void merge(const Graph& other);
  bool erase(const Triple& t);

  bool contains(const Triple& t) const;
  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }

  /// Triples agreeing with every bound position.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  /// Objects of `<s> <p> ?o`, in line order.
  std::vector<Term> objects(const Term& s, const Term& p) const;
  /// Subjects of `?s <p> <o>`, in line order.
  std::vector<Term> subjects(const Term& p, const Term& o) const;

  std::vector<Triple> triples() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.lines_.size() == b.lines_.size() && a.lines_ == b.lines_;
  }

 private:
  using Index = std::unordered_map<std::string, std::set<std::string>>;

  std::map<std::string, Triple> lines_;
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
};

/// Parses the line format: one `<s> <p> <o> .` per line, objects may be
/// `"literal"` or `"literal"^^<datatype>`. Blank lines and `#` comments are
/// skipped. Throws MalformedTriple with the 1-based line number.
Graph parse_triples(std::string_view text);

/// Canonical form: one line per triple, sorted, each terminated by '\n'.
std::string serialize_triples(const Graph& g);

}  // namespace chronomark
