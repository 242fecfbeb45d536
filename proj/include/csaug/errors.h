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

#ifndef CSAUG_ERRORS_H_
#define CSAUG_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace csaug {

// Domain error kinds. Each is carried as a payload on an absl::Status so
// callers can branch on the kind without parsing messages.
enum class ErrorCode {
  // top_model
  kUnbalancedBrackets,
  kUnknownNodePrefix,
  kEmptyNode,
  kRootNotIntent,
  kSlotInsideSlot,
  kIntentInsideIntent,
  // marker
  kMisalignedParse,
  kStructuralError,
  kInvalidPair,
  kSizeTooLarge,
  // genclient
  kBackendUnavailable,
  kProtocolError,
  kTimeoutPerBatch,
  // aligner
  kEmptyReconstruction,
  kInternalInvariantViolation,
  // stats
  kMissingLexicon,
  kEmptyCorpus,
  // pipeline
  kFileUnreadable,
  kColumnCountMismatch,
  kKeyMismatch,
  kUnparseableGold,
  kInvalidConfig,
};

absl::string_view ErrorCodeName(ErrorCode code);

// Builds a status whose canonical code is derived from `code` (backend
// failures map to kUnavailable/kDeadlineExceeded, everything else to
// kInvalidArgument/kNotFound/kInternal) and tags it with `code`.
absl::Status MakeError(ErrorCode code, absl::string_view message);

// Returns the tagged error kind, or nullopt for ok / untagged statuses.
std::optional<ErrorCode> GetErrorCode(const absl::Status& status);

inline bool HasErrorCode(const absl::Status& status, ErrorCode code) {
  return GetErrorCode(status) == code;
}

}  // namespace csaug

#endif  // CSAUG_ERRORS_H_
