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

// Workspace fixtures shared by the service, CLI and acceptance suites.

#pragma once

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "chronomark/annotation.hpp"
#include "chronomark/archive.hpp"
#include "chronomark/graph.hpp"
#include "chronomark/workspace.hpp"

namespace chronomark::testing {

inline constexpr char kHelloUri[] = "http://lanlsource.lanl.gov/hello";

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("chronomark-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// A TCP port that was free a moment ago.
inline int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

struct TShirt {
  static constexpr Instant kDay1{1264035602};  // Thu, 21 Jan 2010 01:00:02 GMT
  static constexpr Instant kDay2{1264122002};
  static constexpr Instant kDay3{1264208402};
  static constexpr Instant kNow{1264381200};   // Mon, 25 Jan 2010 01:00:00 GMT
  static constexpr std::int64_t kNoon = 12 * 3600;

  static ResourceTimeline timeline() {
    return {kHelloUri,
            {{kDay1, "<img alt=\"white t-shirt\">"},
             {kDay2, "<img alt=\"black superhero t-shirt\">"},
             {kDay3, "<img alt=\"black t-shirt with W words\">"}}};
  }

  static AnnotationView annotation(const Workspace& ws, int day) {
    const auto id = "day" + std::to_string(day);
    AnnotationView v;
    v.uri_a = ws.base() + "/annotation/" + id;
    v.content = ws.base() + "/note/" + id;
    v.targets = {kHelloUri};
    v.transcription = ws.content_uri(id);
    const auto at = timeline().versions[day - 1].valid_from.seconds + kNoon;
    v.contexts = {{v.uri_a + "#ctx-1", kHelloUri, ContextRole::Target, Instant{at},
                   std::nullopt}};
    return v;
  }

  /// Seeds the resource, captures it transactionally, stores the three
  /// transcriptions and lists them in the feed. Harvesting is left to the
  /// caller.
  static void populate(const Workspace& ws) {
    ws.save_resource({"hello", timeline()});
    ws.save_archive(transactional_capture(timeline(), kNow, ws.archive_base()));
    auto store = ws.content();
    for (int day = 1; day <= 3; ++day) {
      const auto v = annotation(ws, day);
      store.put("day" + std::to_string(day), serialize_triples(build_annotation(v)));
      ws.append_feed(*v.transcription);
    }
  }
};

}  // namespace chronomark::testing
