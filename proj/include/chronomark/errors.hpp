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
#include <stdexcept>
#include <string>
#include <utility>

namespace chronomark {

/// Root of every exception thrown by the library. `kind()` is a stable
/// identifier used in CLI diagnostics and HTTP error bodies.
class Error : public std::runtime_error {
 public:
  Error(const char* kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  const char* kind() const noexcept { return kind_; }

 private:
  const char* kind_;
};

#define CHRONOMARK_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  }

// temporal
CHRONOMARK_DEFINE_ERROR(MalformedDatetime);
CHRONOMARK_DEFINE_ERROR(MalformedTimestamp);
CHRONOMARK_DEFINE_ERROR(MalformedLinkHeader);
CHRONOMARK_DEFINE_ERROR(OrderViolation);

// annotation model
CHRONOMARK_DEFINE_ERROR(ModelViolation);
CHRONOMARK_DEFINE_ERROR(NotUniform);

// archive
CHRONOMARK_DEFINE_ERROR(InvalidTimeline);
CHRONOMARK_DEFINE_ERROR(BeforeCreation);
CHRONOMARK_DEFINE_ERROR(UnknownResource);
CHRONOMARK_DEFINE_ERROR(NotInArchive);
CHRONOMARK_DEFINE_ERROR(MalformedTimeMap);

// collection
CHRONOMARK_DEFINE_ERROR(MalformedTranscription);
CHRONOMARK_DEFINE_ERROR(FetchFailed);

// discovery
CHRONOMARK_DEFINE_ERROR(NoOriginalLink);
CHRONOMARK_DEFINE_ERROR(NoMementoDatetime);
CHRONOMARK_DEFINE_ERROR(UnknownMemento);
CHRONOMARK_DEFINE_ERROR(NoSpanEvidence);

// workspace / evaluation
CHRONOMARK_DEFINE_ERROR(WorkspaceError);
CHRONOMARK_DEFINE_ERROR(InvalidScenario);

#undef CHRONOMARK_DEFINE_ERROR

/// A triple line that does not match the line grammar. `line()` is 1-based.
class MalformedTriple : public Error {
 public:
  MalformedTriple(std::size_t line, const std::string& what)
      : Error("MalformedTriple",
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by the reconstruct pipeline when a gate cannot resolve a resource.
class ResolutionFailed : public Error {
 public:
  ResolutionFailed(std::string uri_r, const std::string& cause)
      : Error("ResolutionFailed", "cannot resolve <" + uri_r + ">: " + cause),
        uri_r_(std::move(uri_r)) {}

  const std::string& uri_r() const noexcept { return uri_r_; }

 private:
  std::string uri_r_;
};

}  // namespace chronomark
