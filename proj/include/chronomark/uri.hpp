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

#include <string>
#include <string_view>

namespace chronomark::uri {

/// True when `s` has the shape `scheme ":" rest` with a non-empty rest and
/// contains no whitespace, angle brackets, quotes, or control characters.
bool is_absolute(std::string_view s);

/// Percent-encodes everything outside the RFC 3986 unreserved set so the
/// result is safe to embed as a single path segment or query value.
std::string encode_component(std::string_view s);

/// Inverse of encode_component. Malformed escapes are kept literally.
std::string decode_component(std::string_view s);

}  // namespace chronomark::uri
