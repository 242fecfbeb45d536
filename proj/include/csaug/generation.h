// Copyright 2026 The csaug Authors.
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

#ifndef CSAUG_GENERATION_H_
#define CSAUG_GENERATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace csaug {

struct GenerationRequest {
  std::string id;
  std::string domain;
  std::string marked_text;  // English, marker output.

  friend bool operator==(const GenerationRequest&,
                         const GenerationRequest&) = default;
};

// Per-item error markers carried on records.
inline constexpr absl::string_view kMissingResponse = "MissingResponse";

struct GenerationRecord {
  GenerationRequest request;
  std::string candidate;  // Raw backend output; may be malformed.
  std::string backend_info;
  std::string error;  // Empty on success.

  bool ok() const { return error.empty(); }

  friend bool operator==(const GenerationRecord&,
                         const GenerationRecord&) = default;
};

nlohmann::json ToJson(const GenerationRequest& request);
nlohmann::json ToJson(const GenerationRecord& record);
absl::StatusOr<GenerationRequest> RequestFromJson(const nlohmann::json& j);
absl::StatusOr<GenerationRecord> RecordFromJson(const nlohmann::json& j);

// JSON-lines helpers. Blank lines are skipped; any malformed line fails the
// whole read with a ProtocolError naming the line.
absl::StatusOr<std::vector<nlohmann::json>> ParseJsonLines(
    absl::string_view text);
std::string ToJsonLines(const std::vector<nlohmann::json>& objects);

}  // namespace csaug

#endif  // CSAUG_GENERATION_H_
