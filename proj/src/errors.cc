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

#include "csaug/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace csaug {
namespace {

constexpr absl::string_view kPayloadUrl = "type.csaug/error_code";

constexpr std::array<std::pair<ErrorCode, absl::string_view>, 22> kNames = {{
    {ErrorCode::kUnbalancedBrackets, "UnbalancedBrackets"},
    {ErrorCode::kUnknownNodePrefix, "UnknownNodePrefix"},
    {ErrorCode::kEmptyNode, "EmptyNode"},
    {ErrorCode::kRootNotIntent, "RootNotIntent"},
    {ErrorCode::kSlotInsideSlot, "SlotInsideSlot"},
    {ErrorCode::kIntentInsideIntent, "IntentInsideIntent"},
    {ErrorCode::kMisalignedParse, "MisalignedParse"},
    {ErrorCode::kStructuralError, "StructuralError"},
    {ErrorCode::kInvalidPair, "InvalidPair"},
    {ErrorCode::kSizeTooLarge, "SizeTooLarge"},
    {ErrorCode::kBackendUnavailable, "BackendUnavailable"},
    {ErrorCode::kProtocolError, "ProtocolError"},
    {ErrorCode::kTimeoutPerBatch, "TimeoutPerBatch"},
    {ErrorCode::kEmptyReconstruction, "EmptyReconstruction"},
    {ErrorCode::kInternalInvariantViolation, "InternalInvariantViolation"},
    {ErrorCode::kMissingLexicon, "MissingLexicon"},
    {ErrorCode::kEmptyCorpus, "EmptyCorpus"},
    {ErrorCode::kFileUnreadable, "FileUnreadable"},
    {ErrorCode::kColumnCountMismatch, "ColumnCountMismatch"},
    {ErrorCode::kKeyMismatch, "KeyMismatch"},
    {ErrorCode::kUnparseableGold, "UnparseableGold"},
    {ErrorCode::kInvalidConfig, "InvalidConfig"},
}};

absl::StatusCode CanonicalCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBackendUnavailable:
      return absl::StatusCode::kUnavailable;
    case ErrorCode::kTimeoutPerBatch:
      return absl::StatusCode::kDeadlineExceeded;
    case ErrorCode::kProtocolError:
      return absl::StatusCode::kDataLoss;
    case ErrorCode::kFileUnreadable:
    case ErrorCode::kMissingLexicon:
      return absl::StatusCode::kNotFound;
    case ErrorCode::kInternalInvariantViolation:
      return absl::StatusCode::kInternal;
    case ErrorCode::kSizeTooLarge:
      return absl::StatusCode::kOutOfRange;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

absl::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

absl::Status MakeError(ErrorCode code, absl::string_view message) {
  absl::Status status(CanonicalCode(code),
                      absl::StrCat(ErrorCodeName(code), ": ", message));
  status.SetPayload(kPayloadUrl, absl::Cord(ErrorCodeName(code)));
  return status;
}

std::optional<ErrorCode> GetErrorCode(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

}  // namespace csaug
