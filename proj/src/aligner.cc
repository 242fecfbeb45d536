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

#include "csaug/aligner.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/span_filter.h"
#include "csaug/status_macros.h"

namespace csaug {
namespace {

// A node still waiting for its closing bracket (and therefore its id).
struct OpenNode {
  std::vector<ParseNode> children;
  int token_count = 0;
};

}  // namespace

absl::StatusOr<ParseTree> ReconstructParse(const MarkedUtterance& english,
                                           absl::string_view cs_marked) {
  std::vector<OpenNode> stack(1);  // stack[0] is the root.
  int total_tokens = 0;
  for (const std::string& tok : Tokenize(cs_marked)) {
    if (tok == "[") {
      stack.emplace_back();
      continue;
    }
    if (IsPlainToken(tok)) {
      stack.back().children.push_back(ParseNode::Token(tok));
      ++stack.back().token_count;
      ++total_tokens;
      continue;
    }
    const int id = ParseCloseToken(tok);
    if (id == 0 || stack.size() < 2) {
      return MakeError(ErrorCode::kInternalInvariantViolation,
                       absl::StrCat("unexpected token '", tok, "'"));
    }
    auto target = english.span_map.find(id);
    if (target == english.span_map.end()) {
      return MakeError(ErrorCode::kInternalInvariantViolation,
                       absl::StrCat("span id ", id, " not in English input"));
    }
    OpenNode done = std::move(stack.back());
    stack.pop_back();
    if (done.token_count == 0) {
      return MakeError(ErrorCode::kEmptyReconstruction,
                       absl::StrCat("span ", id, " covers no tokens"));
    }
    ParseNode node;
    node.kind = target->second.kind;
    node.label = target->second.label;
    node.children = std::move(done.children);
    stack.back().children.push_back(std::move(node));
    stack.back().token_count += done.token_count;
  }
  if (stack.size() != 1) {
    return MakeError(ErrorCode::kInternalInvariantViolation,
                     "unclosed span in candidate");
  }
  if (total_tokens == 0) {
    return MakeError(ErrorCode::kEmptyReconstruction,
                     "candidate has no tokens");
  }
  ParseTree tree{ParseNode::Intent(english.root_label,
                                   std::move(stack.front().children))};
  RETURN_IF_ERROR(ValidateTree(tree));
  return tree;
}

AlignmentResult AlignCorpus(const std::vector<AlignInput>& inputs,
                            Provenance provenance) {
  AlignmentResult result;
  for (const AlignInput& input : inputs) {
    const GenerationRecord& record = input.record;
    absl::StatusOr<MarkedUtterance> marked = MarkUtterance(input.english);
    absl::StatusOr<ParseTree> parse =
        marked.ok() ? ReconstructParse(*marked, record.candidate)
                    : absl::StatusOr<ParseTree>(marked.status());
    if (!parse.ok()) {
      result.rejects.push_back(
          {record.request.id, record.candidate, parse.status()});
      continue;
    }
    AlignedRecord aligned;
    aligned.id = record.request.id;
    aligned.english = input.english;
    aligned.cs_text = absl::StrJoin(TreeTokens(*parse), " ");
    aligned.cs_parse = *std::move(parse);
    aligned.provenance = provenance;
    aligned.span_count = static_cast<int>(marked->span_map.size());
    result.aligned.push_back(std::move(aligned));
  }
  return result;
}

std::string AlignedToTsv(const std::vector<AlignedRecord>& aligned) {
  std::string out;
  for (const AlignedRecord& r : aligned) {
    absl::StrAppend(&out, r.english.domain, "\t", r.cs_text, "\t",
                    Serialize(r.cs_parse), "\n");
  }
  return out;
}

nlohmann::json ToJson(const AlignReject& reject) {
  const std::optional<ErrorCode> code = GetErrorCode(reject.error);
  return {{"id", reject.id},
          {"candidate", reject.candidate},
          {"error", code ? std::string(ErrorCodeName(*code)) : "Unknown"},
          {"message", std::string(reject.error.message())}};
}

}  // namespace csaug
