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

#include "chronomark/temporal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "chronomark/errors.hpp"
#include "chronomark/uri.hpp"

namespace chronomark {

namespace {

constexpr std::array<const char*, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed",
                                                  "Thu", "Fri", "Sat"};
constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr",
                                                 "May", "Jun", "Jul", "Aug",
                                                 "Sep", "Oct", "Nov", "Dec"};
constexpr std::int64_t kSecondsPerDay = 86400;

struct Civil {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  unsigned weekday = 4;  // 0 = Sunday
};

// Returns nullopt for dates the calendar does not have or fields out of
// range. Leap seconds are not representable.
std::optional<Instant> to_instant(const Civil& c) {
  using namespace std::chrono;
  if (c.year < 1 || c.year > 9999) return std::nullopt;
  if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 ||
      c.second < 0 || c.second > 59)
    return std::nullopt;
  const year_month_day ymd{year{c.year}, month{c.month}, day{c.day}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return Instant{days * kSecondsPerDay + c.hour * 3600 + c.minute * 60 +
                 c.second};
}

Civil to_civil(Instant t) {
  using namespace std::chrono;
  if (t < kMinInstant || t > kMaxInstant)
    throw std::out_of_range("instant " + std::to_string(t.seconds) +
                            " is outside years 0001-9999");
  std::int64_t days = t.seconds / kSecondsPerDay;
  std::int64_t rem = t.seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  const sys_days sd{std::chrono::days{days}};
  const year_month_day ymd{sd};
  Civil c;
  c.year = static_cast<int>(ymd.year());
  c.month = static_cast<unsigned>(ymd.month());
  c.day = static_cast<unsigned>(ymd.day());
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>(rem % 3600 / 60);
  c.second = static_cast<int>(rem % 60);
  c.weekday = weekday{sd}.c_encoding();
  return c;
}

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

int digits(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool is_tchar(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '!': case '#': case '$': case '%': case '&': case '\'': case '*':
    case '+': case '-': case '.': case '^': case '_': case '`': case '|':
    case '~':
      return true;
    default:
      return false;
  }
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

class LinkHeaderReader {
 public:
  explicit LinkHeaderReader(std::string_view s) : s_(s) {}

  std::vector<LinkEntry> read() {
    std::vector<LinkEntry> out;
    skip_ws();
    if (at_end()) fail("empty header");
    while (true) {
      out.push_back(read_entry());
      skip_ws();
      if (at_end()) break;
      if (s_[pos_] != ',') fail("expected ',' between entries");
      ++pos_;
      skip_ws();
      if (at_end()) fail("trailing ','");
    }
    return out;
  }

 private:
  LinkEntry read_entry() {
    if (s_[pos_] != '<') fail("expected '<'");
    const auto close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos) fail("unbalanced '<'");
    LinkEntry entry;
    entry.target = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
    if (entry.target.find('<') != std::string::npos) fail("nested '<'");
    if (!uri::is_absolute(entry.target))
      fail("link target is not an absolute URI: " + entry.target);
    pos_ = close + 1;

    bool have_rel = false;
    while (true) {
      skip_ws();
      if (at_end() || s_[pos_] == ',') break;
      if (s_[pos_] != ';') fail("expected ';'");
      ++pos_;
      skip_ws();
      const auto name = read_token();
      if (name.empty()) fail("empty parameter name");
      skip_ws();
      if (at_end() || s_[pos_] != '=') fail("expected '=' after " + name);
      ++pos_;
      skip_ws();
      auto value = read_value();
      if (iequals(name, "rel")) {
        if (have_rel) fail("duplicate rel");
        if (value.empty()) fail("empty rel");
        entry.rel = std::move(value);
        have_rel = true;
      } else {
        entry.params.emplace_back(name, std::move(value));
      }
    }
    if (!have_rel) fail("missing rel for <" + entry.target + ">");
    return entry;
  }

  std::string read_token() {
    const auto begin = pos_;
    while (!at_end() && is_tchar(s_[pos_])) ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

  std::string read_value() {
    if (!at_end() && s_[pos_] == '"') {
      const auto close = s_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unbalanced '\"'");
      auto value = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return value;
    }
    auto value = read_token();
    if (value.empty()) fail("missing parameter value");
    return value;
  }

  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& why) const {
    throw MalformedLinkHeader(why + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TimeInterval TimeInterval::make(Instant start, Instant end) {
  if (start > end)
    throw OrderViolation("interval start " + std::to_string(start.seconds) +
                         " is after end " + std::to_string(end.seconds));
  return TimeInterval{start, end};
}

double jaccard(const TimeInterval& a, const TimeInterval& b) {
  const auto lo = std::max(a.start, b.start);
  const auto hi = std::min(a.end, b.end);
  const std::int64_t inter = lo <= hi ? hi.seconds - lo.seconds + 1 : 0;
  const std::int64_t uni = a.length() + b.length() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<std::string> LinkEntry::param(std::string_view name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  return std::nullopt;
}

Instant parse_http_datetime(std::string_view s) {
  // "Fri, 22 Jan 2010 01:00:02 GMT"
  //  0123456789012345678901234567 8
  const auto bad = [&](const char* why) {
    return MalformedDatetime(std::string(why) + ": \"" + std::string(s) +
                             "\"");
  };
  if (s.size() != 29) throw bad("expected 29 characters");
  if (s[3] != ',' || s[4] != ' ' || s[7] != ' ' || s[11] != ' ' ||
      s[16] != ' ' || s[19] != ':' || s[22] != ':' || s[25] != ' ')
    throw bad("separator mismatch");
  if (s.substr(26) != "GMT") throw bad("zone must be GMT");

  int weekday = -1;
  for (std::size_t i = 0; i < kWeekdays.size(); ++i)
    if (s.substr(0, 3) == kWeekdays[i]) weekday = static_cast<int>(i);
  if (weekday < 0) throw bad("unknown weekday");

  unsigned month = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i)
    if (s.substr(8, 3) == kMonths[i]) month = static_cast<unsigned>(i + 1);
  if (month == 0) throw bad("unknown month");

  const auto day = s.substr(5, 2), year = s.substr(12, 4),
             hh = s.substr(17, 2), mm = s.substr(20, 2), ss = s.substr(23, 2);
  if (!all_digits(day) || !all_digits(year) || !all_digits(hh) ||
      !all_digits(mm) || !all_digits(ss))
    throw bad("non-digit in numeric field");

  Civil c;
  c.year = digits(year);
  c.month = month;
  c.day = static_cast<unsigned>(digits(day));
  c.hour = digits(hh);
  c.minute = digits(mm);
  c.second = digits(ss);
  const auto t = to_instant(c);
  if (!t) throw bad("impossible calendar time");
  if (to_civil(*t).weekday != static_cast<unsigned>(weekday))
    throw bad("weekday does not match date");
  return *t;
}

std::string format_http_datetime(Instant t) {
  const auto c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s, %02u %s %04d %02d:%02d:%02d GMT",
                kWeekdays[c.weekday], c.day, kMonths[c.month - 1], c.year,
                c.hour, c.minute, c.second);
  return buf;
}

Instant parse_archive_timestamp(std::string_view s) {
  if (s.size() != 14)
    throw MalformedTimestamp("expected 14 digits, got " +
                             std::to_string(s.size()) + " characters");
  if (!all_digits(s))
    throw MalformedTimestamp("non-digit in \"" + std::string(s) + "\"");
  Civil c;
  c.year = digits(s.substr(0, 4));
  c.month = static_cast<unsigned>(digits(s.substr(4, 2)));
  c.day = static_cast<unsigned>(digits(s.substr(6, 2)));
  c.hour = digits(s.substr(8, 2));
  c.minute = digits(s.substr(10, 2));
  c.second = digits(s.substr(12, 2));
  const auto t = to_instant(c);
  if (!t)
    throw MalformedTimestamp("impossible calendar time \"" + std::string(s) +
                             "\"");
  return *t;
}

std::string format_archive_timestamp(Instant t) {
  const auto c = to_civil(t);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u%02d%02d%02d", c.year, c.month,
                c.day, c.hour, c.minute, c.second);
  return buf;
}

Instant parse_xsd_datetime(std::string_view s) {
  // 2010-01-22T01:00:02Z
  const auto bad = [&] {
    return MalformedDatetime("not an xsd:dateTime in Z form: \"" +
                             std::string(s) + "\"");
  };
  if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' ||
      s[13] != ':' || s[16] != ':' || s[19] != 'Z')
    throw bad();
  const auto year = s.substr(0, 4), mon = s.substr(5, 2), day = s.substr(8, 2),
             hh = s.substr(11, 2), mm = s.substr(14, 2), ss = s.substr(17, 2);
  if (!all_digits(year) || !all_digits(mon) || !all_digits(day) ||
      !all_digits(hh) || !all_digits(mm) || !all_digits(ss))
    throw bad();
  Civil c;
  c.year = digits(year);
  c.month = static_cast<unsigned>(digits(mon));
  c.day = static_cast<unsigned>(digits(day));
  c.hour = digits(hh);
  c.minute = digits(mm);
  c.second = digits(ss);
  const auto t = to_instant(c);
  if (!t) throw bad();
  return *t;
}

std::string format_xsd_datetime(Instant t) {
  const auto c = to_civil(t);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", c.year,
                c.month, c.day, c.hour, c.minute, c.second);
  return buf;
}

std::vector<LinkEntry> parse_link_header(std::string_view s) {
  return LinkHeaderReader(s).read();
}

std::string emit_link_header(const std::vector<LinkEntry>& entries) {
  if (entries.empty()) throw MalformedLinkHeader("no entries to emit");
  const auto check_value = [](const std::string& v) {
    if (v.find('"') != std::string::npos)
      throw MalformedLinkHeader("parameter value contains '\"': " + v);
  };
  std::string out;
  for (const auto& e : entries) {
    if (e.rel.empty()) throw MalformedLinkHeader("entry without rel");
    check_value(e.rel);
    if (!out.empty()) out += ", ";
    out += '<';
    out += e.target;
    out += ">;rel=\"";
    out += e.rel;
    out += '"';
    for (const auto& [k, v] : e.params) {
      check_value(v);
      out += ';';
      out += k;
      out += "=\"";
      out += v;
      out += '"';
    }
  }
  return out;
}

Instant midpoint(Instant a, Instant b) {
  if (a > b)
    throw OrderViolation("midpoint of " + std::to_string(a.seconds) +
                         " and " + std::to_string(b.seconds));
  return Instant{a.seconds + (b.seconds - a.seconds) / 2};
}

}  // namespace chronomark
