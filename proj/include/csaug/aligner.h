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

#ifndef CSAUG_ALIGNER_H_
#define CSAUG_ALIGNER_H_

// Transfers an English parse onto a marked code-switched utterance through
// the span ids: CS span k becomes a node with the kind and label of English
// node k. Sibling order follows the CS surface order, and tokens outside
// every span attach to the nearest enclosing span (the root if none).

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "csaug/generation.h"
#include "csaug/marker.h"
#include "csaug/top_tree.h"
#include "json.hpp"

namespace csaug {

// Precondition: ValidatePair(english, cs_marked) passes.
//
// Errors: EmptyReconstruction (no CS tokens at all, or a span with no tokens
// inside it); SlotInsideSlot / IntentInsideIntent when containment checking
// was disabled upstream and the CS nesting breaks TOP rules;
// InternalInvariantViolation for inputs the filter should have rejected.
absl::StatusOr<ParseTree> ReconstructParse(const MarkedUtterance& english,
                                           absl::string_view cs_marked);

enum class Provenance { kHuman, kGenerated };

struct AlignedRecord {
  std::string id;
  Utterance english;
  std::string cs_text;
  ParseTree cs_parse;
  Provenance provenance = Provenance::kGenerated;
  int span_count = 0;
};

struct AlignInput {
  GenerationRecord record;
  Utterance english;  // With parse.
};

struct AlignReject {
  std::string id;
  std::string candidate;
  absl::Status error;
};

struct AlignmentResult {
  std::vector<AlignedRecord> aligned;
  std::vector<AlignReject> rejects;
};

AlignmentResult AlignCorpus(const std::vector<AlignInput>& inputs,
                            Provenance provenance = Provenance::kGenerated);

// Same schema as the ingestion corpus: domain, cs_text, serialized parse.
std::string AlignedToTsv(const std::vector<AlignedRecord>& aligned);

nlohmann::json ToJson(const AlignReject& reject);

}  // namespace csaug

#endif  // CSAUG_ALIGNER_H_
