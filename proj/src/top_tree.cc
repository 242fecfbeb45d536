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

#include "csaug/top_tree.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/status_macros.h"

namespace csaug {
namespace {

constexpr absl::string_view kIntentPrefix = "[IN:";
constexpr absl::string_view kSlotPrefix = "[SL:";

absl::Status CheckNesting(const ParseNode& parent, const ParseNode& child,
                          int token_index) {
  if (parent.kind == NodeKind::kIntent && child.kind == NodeKind::kIntent) {
    return MakeError(ErrorCode::kIntentInsideIntent,
                     absl::StrCat("IN:", child.label, " directly inside IN:",
                                  parent.label, " at token ", token_index));
  }
  if (parent.kind == NodeKind::kSlot && child.kind == NodeKind::kSlot) {
    return MakeError(ErrorCode::kSlotInsideSlot,
                     absl::StrCat("SL:", child.label, " directly inside SL:",
                                  parent.label, " at token ", token_index));
  }
  return absl::OkStatus();
}

void SerializeTo(const ParseNode& node, std::string& out) {
  if (node.is_token()) {
    out += node.text;
    return;
  }
  absl::StrAppend(&out,
                  node.kind == NodeKind::kIntent ? kIntentPrefix : kSlotPrefix,
                  node.label);
  for (const ParseNode& child : node.children) {
    out += ' ';
    SerializeTo(child, out);
  }
  out += " ]";
}

void CollectTokens(const ParseNode& node, std::vector<std::string>& out) {
  if (node.is_token()) {
    out.push_back(node.text);
    return;
  }
  for (const ParseNode& child : node.children) CollectTokens(child, out);
}

// Returns the number of tokens covered by `node`.
int CollectSpans(const ParseNode& node, std::vector<int>& path, int offset,
                 std::vector<NodeSpan>& out) {
  if (node.is_token()) return 1;
  const size_t slot = out.size();
  if (!path.empty()) out.push_back({path, node.kind, node.label, offset, 0});
  int covered = 0;
  for (size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    covered += CollectSpans(node.children[i], path, offset + covered, out);
    path.pop_back();
  }
  if (!path.empty()) out[slot].end = offset + covered;
  return covered;
}

bool IsBadTokenText(absl::string_view text) {
  if (text.empty() || text == "[") return true;
  if (absl::StartsWith(text, "]")) return true;
  for (char c : text) {
    if (absl::ascii_isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

absl::Status ValidateNode(const ParseNode& node) {
  if (node.is_token()) {
    if (IsBadTokenText(node.text)) {
      return MakeError(ErrorCode::kUnknownNodePrefix,
                       absl::StrCat("invalid token text '", node.text, "'"));
    }
    return absl::OkStatus();
  }
  if (node.label.empty()) {
    return MakeError(ErrorCode::kUnknownNodePrefix, "node without label");
  }
  if (node.children.empty()) {
    return MakeError(ErrorCode::kEmptyNode,
                     absl::StrCat(NodeKindName(node.kind), " ", node.label,
                                  " has no children"));
  }
  for (const ParseNode& child : node.children) {
    RETURN_IF_ERROR(CheckNesting(node, child, -1));
    RETURN_IF_ERROR(ValidateNode(child));
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kIntent:
      return "Intent";
    case NodeKind::kSlot:
      return "Slot";
    case NodeKind::kToken:
      return "Token";
  }
  return "?";
}

ParseNode ParseNode::Intent(std::string label,
                            std::vector<ParseNode> children) {
  return {NodeKind::kIntent, std::move(label), "", std::move(children)};
}

ParseNode ParseNode::Slot(std::string label, std::vector<ParseNode> children) {
  return {NodeKind::kSlot, std::move(label), "", std::move(children)};
}

ParseNode ParseNode::Token(std::string text) {
  return {NodeKind::kToken, "", std::move(text), {}};
}

absl::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "?";
}

std::optional<Split> ParseSplit(absl::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "eval" || name == "dev") {
    return Split::kValidation;
  }
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::vector<std::string> Tokenize(absl::string_view text) {
  return absl::StrSplit(text, absl::ByAnyChar(" \t\n\r\f\v"),
                        absl::SkipEmpty());
}

absl::StatusOr<ParseTree> ParseTop(absl::string_view text) {
  const std::vector<std::string> tokens = Tokenize(text);
  std::vector<ParseNode> stack;
  std::optional<ParseNode> root;

  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const int at = static_cast<int>(i);
    if (root.has_value()) {
      return MakeError(ErrorCode::kUnbalancedBrackets,
                       absl::StrCat("content after the root closes at token ",
                                    at, ": '", tok, "'"));
    }
    if (absl::StartsWith(tok, "[")) {
      ParseNode node;
      if (absl::StartsWith(tok, kIntentPrefix)) {
        node.kind = NodeKind::kIntent;
        node.label = absl::AsciiStrToUpper(tok.substr(kIntentPrefix.size()));
      } else if (absl::StartsWith(tok, kSlotPrefix)) {
        node.kind = NodeKind::kSlot;
        node.label = absl::AsciiStrToUpper(tok.substr(kSlotPrefix.size()));
      } else {
        return MakeError(ErrorCode::kUnknownNodePrefix,
                         absl::StrCat("'", tok, "' at token ", at));
      }
      if (node.label.empty()) {
        return MakeError(ErrorCode::kUnknownNodePrefix,
                         absl::StrCat("empty label at token ", at));
      }
      if (stack.empty()) {
        if (node.kind != NodeKind::kIntent) {
          return MakeError(ErrorCode::kRootNotIntent,
                           absl::StrCat("root is SL:", node.label));
        }
      } else {
        RETURN_IF_ERROR(CheckNesting(stack.back(), node, at));
      }
      stack.push_back(std::move(node));
    } else if (tok == "]") {
      if (stack.empty()) {
        return MakeError(ErrorCode::kUnbalancedBrackets,
                         absl::StrCat("unmatched ']' at token ", at));
      }
      ParseNode node = std::move(stack.back());
      stack.pop_back();
      if (node.children.empty()) {
        return MakeError(ErrorCode::kEmptyNode,
                         absl::StrCat(NodeKindName(node.kind), " ", node.label,
                                      " closes with no children at token ",
                                      at));
      }
      if (stack.empty()) {
        root = std::move(node);
      } else {
        stack.back().children.push_back(std::move(node));
      }
    } else if (absl::StartsWith(tok, "]")) {
      return MakeError(ErrorCode::kUnknownNodePrefix,
                       absl::StrCat("reserved token '", tok, "' at token ", at));
    } else {
      if (stack.empty()) {
        return MakeError(ErrorCode::kRootNotIntent,
                         absl::StrCat("token '", tok, "' outside any intent"));
      }
      stack.back().children.push_back(ParseNode::Token(tok));
    }
  }
  if (!stack.empty()) {
    return MakeError(ErrorCode::kUnbalancedBrackets,
                     absl::StrCat(stack.size(), " unclosed node(s)"));
  }
  if (!root.has_value()) {
    return MakeError(ErrorCode::kRootNotIntent, "empty parse");
  }
  return ParseTree{std::move(*root)};
}

std::string Serialize(const ParseNode& node) {
  std::string out;
  SerializeTo(node, out);
  return out;
}

std::string Serialize(const ParseTree& tree) { return Serialize(tree.root); }

absl::Status ValidateTree(const ParseTree& tree) {
  if (tree.root.kind != NodeKind::kIntent) {
    return MakeError(ErrorCode::kRootNotIntent, "root is not an intent");
  }
  return ValidateNode(tree.root);
}

bool ExactMatch(const ParseTree& a, const ParseTree& b) {
  return Serialize(a) == Serialize(b);
}

std::vector<std::string> TreeTokens(const ParseTree& tree) {
  std::vector<std::string> out;
  CollectTokens(tree.root, out);
  return out;
}

std::vector<NodeSpan> LeafNodes(const ParseTree& tree) {
  std::vector<NodeSpan> out;
  std::vector<int> path;
  CollectSpans(tree.root, path, 0, out);
  return out;
}

}  // namespace csaug
