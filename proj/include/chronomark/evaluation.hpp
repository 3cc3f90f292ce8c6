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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chronomark/annotation.hpp"
#include "chronomark/archive.hpp"
#include "chronomark/temporal.hpp"

namespace chronomark {

/// Parameters of a randomized evaluation run. Crawl density is the chance
/// that a crawler visits the resource in any given second; each timeline
/// draws its own density uniformly from [min_density, max_density].
struct ScenarioSpec {
  std::uint64_t seed = 1;
  int timelines = 20;
  int min_versions = 2;
  int max_versions = 8;
  double min_density = 0.05;
  double max_density = 0.5;
  /// Dated annotations per timeline.
  int annotations = 5;
  int trials = 1;
  /// Skip the crawler archive and report only transactional results.
  bool transactional_only = false;

  /// Throws InvalidScenario.
  void validate() const;
};

/// One generated resource history with everything derived from it.
struct Scenario {
  ResourceTimeline timeline;
  Instant now;
  std::vector<Instant> crawls;
  /// Varied annotations, one dated target context each.
  std::vector<AnnotationView> annotations;
};

/// Draws one scenario. Versions are 100 to 1000 seconds apart; annotation
/// times fall anywhere between the first version and `now`.
Scenario generate_scenario(std::uint64_t seed, const std::string& uri_r,
                           int versions, double density, int annotations);

struct StrategyStats {
  std::size_t mementos = 0;
  double jaccard_sum = 0;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t hits = 0;

  double mean_jaccard() const;
  /// Micro-averaged; 1 when nothing was retrieved.
  double precision() const;
  /// Micro-averaged; 1 when nothing was relevant.
  double recall() const;
};

struct EvaluationReport {
  ScenarioSpec spec;
  std::size_t timelines = 0;
  StrategyStats valid;
  StrategyStats observed;
  StrategyStats approximate;
  std::size_t approximate_contains_snapshot = 0;

  std::size_t q1_resolutions = 0;
  std::size_t q1_clamped = 0;
  std::size_t q1_faithful = 0;
  /// Annotated versions that were later replaced, and how many of those the
  /// current representation no longer matches.
  std::size_t q1_edited = 0;
  std::size_t q1_control_differs = 0;

  double q1_fidelity() const;
  /// key=value lines, fixed order, fixed precision.
  std::string to_text() const;
};

/// Runs every trial. Ground truth comes from the generated timelines only.
/// Throws InvalidScenario.
EvaluationReport evaluate(const ScenarioSpec& spec);

}  // namespace chronomark
