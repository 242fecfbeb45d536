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

#include "csaug/generation.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"

namespace csaug {
namespace {

absl::StatusOr<std::string> StringField(const nlohmann::json& j,
                                        const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (!required) return std::string();
    return MakeError(ErrorCode::kProtocolError,
                     absl::StrCat("missing field '", key, "'"));
  }
  if (!it->is_string()) {
    return MakeError(ErrorCode::kProtocolError,
                     absl::StrCat("field '", key, "' is not a string"));
  }
  return it->get<std::string>();
}

}  // namespace

nlohmann::json ToJson(const GenerationRequest& request) {
  return {{"id", request.id},
          {"domain", request.domain},
          {"marked_text", request.marked_text}};
}

nlohmann::json ToJson(const GenerationRecord& record) {
  nlohmann::json j = ToJson(record.request);
  j["candidate"] = record.candidate;
  j["backend_info"] = record.backend_info;
  if (!record.ok()) j["error"] = record.error;
  return j;
}

absl::StatusOr<GenerationRequest> RequestFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorCode::kProtocolError, "request is not an object");
  }
  GenerationRequest r;
  auto id = StringField(j, "id", true);
  if (!id.ok()) return id.status();
  auto domain = StringField(j, "domain", false);
  if (!domain.ok()) return domain.status();
  auto text = StringField(j, "marked_text", true);
  if (!text.ok()) return text.status();
  r.id = *std::move(id);
  r.domain = *std::move(domain);
  r.marked_text = *std::move(text);
  return r;
}

absl::StatusOr<GenerationRecord> RecordFromJson(const nlohmann::json& j) {
  absl::StatusOr<GenerationRequest> request = RequestFromJson(j);
  if (!request.ok()) return request.status();
  GenerationRecord record;
  record.request = *std::move(request);
  for (auto [key, field] : {std::pair{"candidate", &record.candidate},
                            std::pair{"backend_info", &record.backend_info},
                            std::pair{"error", &record.error}}) {
    auto value = StringField(j, key, false);
    if (!value.ok()) return value.status();
    *field = *std::move(value);
  }
  return record;
}

absl::StatusOr<std::vector<nlohmann::json>> ParseJsonLines(
    absl::string_view text) {
  std::vector<nlohmann::json> out;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      return MakeError(ErrorCode::kProtocolError,
                       absl::StrCat("malformed JSON on line ", line_no));
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string ToJsonLines(const std::vector<nlohmann::json>& objects) {
  std::string out;
  for (const nlohmann::json& j : objects) {
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

}  // namespace csaug
