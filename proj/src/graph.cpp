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

#include "chronomark/graph.hpp"

#include <stdexcept>
#include <utility>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"

namespace chronomark {

namespace {

std::string escape_literal(std::string_view v) {
  std::string out;
  out.reserve(v.size() + 2);
  for (char c : v) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void check_term(const Term& t, const char* position) {
  if (t.is_iri()) {
    if (!uri::is_absolute(t.value))
      throw std::invalid_argument(std::string(position) +
                                  " is not an absolute IRI: " + t.value);
  } else if (t.datatype && !uri::is_absolute(*t.datatype)) {
    throw std::invalid_argument("literal datatype is not an absolute IRI: " +
                                *t.datatype);
  }
}

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t number)
      : s_(line), number_(number) {}

  Triple read() {
    Triple t;
    t.subject = read_term();
    if (!t.subject.is_iri()) fail("subject must be an IRI");
    require_space();
    t.predicate = read_term();
    if (!t.predicate.is_iri()) fail("predicate must be an IRI");
    require_space();
    t.object = read_term();
    skip_ws();
    if (at_end() || s_[pos_] != '.') fail("missing terminating ' .'");
    ++pos_;
    skip_ws();
    if (!at_end()) fail("trailing characters after '.'");
    return t;
  }

 private:
  Term read_term() {
    if (at_end()) fail("unexpected end of line");
    if (s_[pos_] == '<') return Term::iri(read_iri());
    if (s_[pos_] == '"') {
      auto value = read_quoted();
      if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '^') {
        pos_ += 2;
        if (at_end() || s_[pos_] != '<') fail("expected datatype IRI");
        return Term::literal(std::move(value), read_iri());
      }
      return Term::literal(std::move(value));
    }
    fail("expected '<' or '\"'");
  }

  std::string read_iri() {
    const auto close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated IRI");
    auto value = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
    if (!uri::is_absolute(value)) fail("not an absolute IRI: " + value);
    pos_ = close + 1;
    return value;
  }

  std::string read_quoted() {
    std::string out;
    ++pos_;
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail("dangling escape");
      switch (s_[pos_++]) {
        case '\\': out.push_back('\\'); break;
        case '"': out.push_back('"'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        default: fail("unknown escape");
      }
    }
  }

  void require_space() {
    if (at_end() || (s_[pos_] != ' ' && s_[pos_] != '\t'))
      fail("expected whitespace between terms");
    skip_ws();
  }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& why) const {
    throw MalformedTriple(number_, why);
  }

  std::string_view s_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

}  // namespace

Term Term::iri(std::string value) {
  return Term{Kind::Iri, std::move(value), std::nullopt};
}

Term Term::literal(std::string value, std::optional<std::string> datatype) {
  return Term{Kind::Literal, std::move(value), std::move(datatype)};
}

std::string to_string(const Term& t) {
  if (t.is_iri()) return "<" + t.value + ">";
  auto out = "\"" + escape_literal(t.value) + "\"";
  if (t.datatype) out += "^^<" + *t.datatype + ">";
  return out;
}

std::string to_line(const Triple& t) {
  return to_string(t.subject) + " " + to_string(t.predicate) + " " +
         to_string(t.object) + " .";
}

bool Graph::add(const Triple& t) {
  if (!t.subject.is_iri()) throw std::invalid_argument("literal subject");
  if (!t.predicate.is_iri()) throw std::invalid_argument("literal predicate");
  check_term(t.subject, "subject");
  check_term(t.predicate, "predicate");
  check_term(t.object, "object");

  auto line = to_line(t);
  auto [it, inserted] = lines_.emplace(line, t);
  if (!inserted) return false;
  by_subject_[to_string(t.subject)].insert(line);
  by_predicate_[to_string(t.predicate)].insert(line);
  by_object_[to_string(t.object)].insert(std::move(line));
  return true;
}

void Graph::merge(const Graph& other) {
  for (const auto& [line, t] : other.lines_) add(t);
}

bool Graph::erase(const Triple& t) {
  const auto line = to_line(t);
  if (lines_.erase(line) == 0) return false;
  const auto drop = [&](Index& index, const Term& term) {
    auto it = index.find(to_string(term));
    it->second.erase(line);
    if (it->second.empty()) index.erase(it);
  };
  drop(by_subject_, t.subject);
  drop(by_predicate_, t.predicate);
  drop(by_object_, t.object);
  return true;
}

bool Graph::contains(const Triple& t) const {
  return lines_.contains(to_line(t));
}

std::vector<Triple> Graph::match(const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  // Narrow to the smallest index bucket among the bound positions, then
  // filter the rest.
  const std::set<std::string>* candidates = nullptr;
  static const std::set<std::string> kNone;
  const auto narrow = [&](const Index& index, const std::optional<Term>& term) {
    if (!term) return;
    const auto it = index.find(to_string(*term));
    const auto* bucket = it == index.end() ? &kNone : &it->second;
    if (!candidates || bucket->size() < candidates->size())
      candidates = bucket;
  };
  narrow(by_subject_, s);
  narrow(by_predicate_, p);
  narrow(by_object_, o);

  const auto agrees = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) &&
           (!o || t.object == *o);
  };

  std::vector<Triple> out;
  if (!candidates) {
    out.reserve(lines_.size());
    for (const auto& [line, t] : lines_) out.push_back(t);
    return out;
  }
  for (const auto& line : *candidates) {
    const auto& t = lines_.at(line);
    if (agrees(t)) out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(std::move(t.object));
  return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o))
    out.push_back(std::move(t.subject));
  return out;
}

std::vector<Triple> Graph::triples() const {
  return match(std::nullopt, std::nullopt, std::nullopt);
}

Graph parse_triples(std::string_view text) {
  Graph g;
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(begin, end - begin);
    ++number;
    begin = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    g.add(LineReader(line.substr(first), number).read());
    if (end == text.size()) break;
  }
  return g;
}

std::string serialize_triples(const Graph& g) {
  std::string out;
  for (const auto& t : g.triples()) {
    out += to_line(t);
    out += '\n';
  }
  return out;
}

}  // namespace chronomark
