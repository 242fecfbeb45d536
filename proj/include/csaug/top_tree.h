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

#ifndef CSAUG_TOP_TREE_H_
#define CSAUG_TOP_TREE_H_

// Hierarchical TOP semantic parses: intent and slot nodes over a
// whitespace-tokenized utterance, written in bracket prefix syntax:
//
//   [IN:CREATE_ALARM Set alarm [SL:DATE_TIME for 4:30 am ] ]
//
// An intent holds tokens and slots; a slot holds tokens and intents.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace csaug {

enum class NodeKind { kIntent, kSlot, kToken };

absl::string_view NodeKindName(NodeKind kind);

struct ParseNode {
  NodeKind kind = NodeKind::kToken;
  std::string label;  // Intent/Slot only.
  std::string text;   // Token only.
  std::vector<ParseNode> children;

  static ParseNode Intent(std::string label, std::vector<ParseNode> children);
  static ParseNode Slot(std::string label, std::vector<ParseNode> children);
  static ParseNode Token(std::string text);

  bool is_token() const { return kind == NodeKind::kToken; }

  friend bool operator==(const ParseNode&, const ParseNode&) = default;
};

struct ParseTree {
  ParseNode root;

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

enum class Split { kTrain, kValidation, kTest };

absl::string_view SplitName(Split split);
std::optional<Split> ParseSplit(absl::string_view name);

struct Utterance {
  std::string domain;
  Split split = Split::kTrain;
  std::string text;
  std::optional<ParseTree> parse;
};

// Splits on runs of ASCII whitespace.
std::vector<std::string> Tokenize(absl::string_view text);

// Parses a bracketed TOP string. Labels are upper-cased.
//
// Errors (see errors.h): UnbalancedBrackets, UnknownNodePrefix, EmptyNode,
// RootNotIntent, SlotInsideSlot, IntentInsideIntent.
absl::StatusOr<ParseTree> ParseTop(absl::string_view text);

// Canonical single-space form. Total on valid trees.
std::string Serialize(const ParseTree& tree);
std::string Serialize(const ParseNode& node);

// Checks TOP well-formedness of an already-built tree; same error kinds as
// ParseTop.
absl::Status ValidateTree(const ParseTree& tree);

bool ExactMatch(const ParseTree& a, const ParseTree& b);

// In-order token texts.
std::vector<std::string> TreeTokens(const ParseTree& tree);

struct NodeSpan {
  std::vector<int> path;  // Child indices from the root.
  NodeKind kind = NodeKind::kIntent;
  std::string label;
  int begin = 0;  // Token offsets into the flat utterance, [begin, end).
  int end = 0;

  friend bool operator==(const NodeSpan&, const NodeSpan&) = default;
};

// All non-root intent/slot nodes in pre-order, left to right.
std::vector<NodeSpan> LeafNodes(const ParseTree& tree);

}  // namespace csaug

#endif  // CSAUG_TOP_TREE_H_
