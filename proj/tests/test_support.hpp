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

// Shared generators and independent oracles for the test suites. Nothing in
// here calls into the code paths it is used to check.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chronomark/annotation.hpp"
#include "chronomark/archive.hpp"
#include "chronomark/temporal.hpp"

namespace chronomark::testing {

/// Seconds since the epoch by counting days year by year and month by month.
inline std::int64_t civil_seconds(int year, int month, int day, int hour,
                                  int minute, int second) {
  const auto leap = [](int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  };
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  std::int64_t days = 0;
  for (int y = 1970; y < year; ++y) days += leap(y) ? 366 : 365;
  for (int y = year; y < 1970; ++y) days -= leap(y) ? 366 : 365;
  for (int m = 1; m < month; ++m) days += kDays[m - 1] + (m == 2 && leap(year));
  days += day - 1;
  return days * 86400 + hour * 3600 + minute * 60 + second;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Instant instant() { return Instant{between(0, (std::int64_t{1} << 33) - 1)}; }

  std::string word(std::size_t min_len = 1, std::size_t max_len = 8) {
    static constexpr char kAlpha[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    const auto n = static_cast<std::size_t>(between(
        static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
      s.push_back(kAlpha[between(0, sizeof kAlpha - 2)]);
    return s;
  }

  std::string uri() {
    return "http://" + word(1, 6) + ".example/" + word(0, 6);
  }

  /// Printable text including the characters the triple format escapes.
  std::string text() {
    static constexpr char kChars[] =
        "abc XYZ 019 \"\\\n\t\r<>^#.,;=_-/:@";
    const auto n = between(0, 24);
    std::string s;
    for (std::int64_t i = 0; i < n; ++i)
      s.push_back(kChars[between(0, sizeof kChars - 2)]);
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// A random valid annotation of the requested class with 1-4 targets.
inline AnnotationView random_view(Gen& g, TimeClass cls) {
  AnnotationView v;
  const auto base = "http://anno" + g.word(1, 4) + ".example/";
  v.uri_a = base + "a/" + g.word();
  v.content = base + "c/" + g.word();
  const auto n_targets = g.between(1, 4);
  for (std::int64_t i = 0; i < n_targets; ++i)
    v.targets.push_back(base + "t" + std::to_string(i) + "/" + g.word());
  if (g.coin(0.2)) v.predicate = base + "p/" + g.word();
  if (g.coin(0.5)) v.transcription = base + "trn/" + g.word();
  if (cls == TimeClass::UniformTime) v.annotation_when = g.instant();

  int ctx = 0;
  const auto add_context = [&](const std::string& about, ContextRole role) {
    ContextView c;
    c.uri_ctx = base + "ctx/" + std::to_string(ctx++);
    c.about = about;
    c.role = role;
    if (g.coin(0.5))
      c.segment = SegmentDescription{c.uri_ctx + "/sd", g.text()};
    if (cls == TimeClass::VariedTime && g.coin(0.8)) c.when = g.instant();
    v.contexts.push_back(std::move(c));
  };
  for (const auto& t : v.targets) {
    const bool want = cls == TimeClass::VariedTime ? g.coin(0.8) : g.coin(0.3);
    if (want) add_context(t, ContextRole::Target);
    if (g.coin(0.1)) add_context(t, ContextRole::Target);
  }
  if (cls == TimeClass::VariedTime ? g.coin(0.7) : g.coin(0.3))
    add_context(v.content, ContextRole::Content);
  if (cls == TimeClass::VariedTime && v.contexts.empty())
    add_context(v.targets.front(), ContextRole::Target);
  if (cls == TimeClass::VariedTime && classify_time(v) != TimeClass::VariedTime)
    v.contexts.front().when = g.instant();
  return v;
}

/// Timeline with `n` versions separated by 1..max_gap seconds and unique
/// bodies.
inline ResourceTimeline random_timeline(Gen& g, const std::string& uri_r,
                                        std::int64_t n,
                                        std::int64_t max_gap = 50) {
  ResourceTimeline tl;
  tl.uri_r = uri_r;
  std::int64_t t = g.between(0, 1000);
  for (std::int64_t i = 0; i < n; ++i) {
    tl.versions.push_back(
        {Instant{t}, "v" + std::to_string(i) + ":" + g.word(0, 6)});
    t += g.between(1, max_gap);
  }
  return tl;
}

/// Body by linear scan; nullopt before creation.
inline std::optional<std::string> scan_rep(const ResourceTimeline& tl,
                                           Instant t) {
  std::optional<std::string> out;
  for (const auto& v : tl.versions)
    if (v.valid_from <= t) out = v.body;
  return out;
}

}  // namespace chronomark::testing
