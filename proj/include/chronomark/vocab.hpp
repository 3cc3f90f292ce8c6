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

#include <string_view>

// IRIs of the vocabularies the library reads and writes.
namespace chronomark::vocab {

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfValue =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#value";
inline constexpr std::string_view kXsdDateTime =
    "http://www.w3.org/2001/XMLSchema#dateTime";

namespace oac {
inline constexpr std::string_view kNs = "http://www.openannotation.org/ns/";
inline constexpr std::string_view kAnnotation =
    "http://www.openannotation.org/ns/Annotation";
inline constexpr std::string_view kContext =
    "http://www.openannotation.org/ns/Context";
inline constexpr std::string_view kSegmentDescription =
    "http://www.openannotation.org/ns/SegmentDescription";
inline constexpr std::string_view kTranscription =
    "http://www.openannotation.org/ns/Transcription";
inline constexpr std::string_view kHasContent =
    "http://www.openannotation.org/ns/hasContent";
inline constexpr std::string_view kHasTarget =
    "http://www.openannotation.org/ns/hasTarget";
inline constexpr std::string_view kPredicate =
    "http://www.openannotation.org/ns/predicate";
inline constexpr std::string_view kAnnotates =
    "http://www.openannotation.org/ns/annotates";
inline constexpr std::string_view kHasTargetContext =
    "http://www.openannotation.org/ns/hasTargetContext";
inline constexpr std::string_view kHasContentContext =
    "http://www.openannotation.org/ns/hasContentContext";
inline constexpr std::string_view kContextAbout =
    "http://www.openannotation.org/ns/contextAbout";
inline constexpr std::string_view kHasSegmentDescription =
    "http://www.openannotation.org/ns/hasSegmentDescription";
inline constexpr std::string_view kWhen =
    "http://www.openannotation.org/ns/when";
inline constexpr std::string_view kTranscribes =
    "http://www.openannotation.org/ns/transcribes";
}  // namespace oac

// Stand-in namespace for the Memento TimeMap terms; nothing else in the
// code base spells it out.
namespace mem {
inline constexpr std::string_view kNs = "http://chronomark.invalid/memento/ns#";
inline constexpr std::string_view kOriginalResource =
    "http://chronomark.invalid/memento/ns#OriginalResource";
inline constexpr std::string_view kMementoFor =
    "http://chronomark.invalid/memento/ns#mementoFor";
inline constexpr std::string_view kMementoDatetime =
    "http://chronomark.invalid/memento/ns#mementoDatetime";
inline constexpr std::string_view kValidOver =
    "http://chronomark.invalid/memento/ns#validOver";
inline constexpr std::string_view kObservedOver =
    "http://chronomark.invalid/memento/ns#observedOver";
inline constexpr std::string_view kObservations =
    "http://chronomark.invalid/memento/ns#observations";
inline constexpr std::string_view kStart =
    "http://chronomark.invalid/memento/ns#start";
inline constexpr std::string_view kEnd =
    "http://chronomark.invalid/memento/ns#end";
}  // namespace mem

}  // namespace chronomark::vocab
