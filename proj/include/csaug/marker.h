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

#ifndef CSAUG_MARKER_H_
#define CSAUG_MARKER_H_

// Span-ID marking of English utterances. Every non-root intent/slot node of
// the parse gets a bracket pair; ids are 1..n in pre-order:
//
//   Set alarm [ for 4:30 am on Tuesday ]_1 and [ Thursday ]_2 of next week
//
// The open bracket is the standalone token "[" and the close is the fused
// token "]_k".

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "csaug/top_tree.h"

namespace csaug {

struct MarkedToken {
  enum class Type { kPlain, kOpen, kClose };

  Type type = Type::kPlain;
  std::string text;  // kPlain only.
  int span_id = 0;   // kClose only.

  friend bool operator==(const MarkedToken&, const MarkedToken&) = default;
};

struct SpanTarget {
  std::vector<int> path;
  NodeKind kind = NodeKind::kSlot;
  std::string label;

  friend bool operator==(const SpanTarget&, const SpanTarget&) = default;
};

struct MarkedUtterance {
  std::vector<MarkedToken> tokens;
  std::map<int, SpanTarget> span_map;
  std::string root_label;

  // Space-joined wire form.
  std::string Text() const;
};

std::string CloseToken(int span_id);

// Errors: MisalignedParse when the parse tokens differ from the text tokens
// or the utterance carries no parse.
absl::StatusOr<MarkedUtterance> MarkUtterance(const Utterance& utterance);

MarkedUtterance MarkTree(const ParseTree& tree);

// Removes bracket tokens. Errors: StructuralError when brackets are
// unbalanced or an id cannot be read.
absl::StatusOr<std::string> StripMarks(absl::string_view marked_text);

struct AnnotatedPair {
  Utterance english;      // Must carry a parse.
  std::string cs_marked;  // Human code-switched marked text.
};

struct SeedPair {
  MarkedUtterance input;
  std::string target;
  std::string domain;
};

// Domain-stratified sampling chain. Items are ranked so that any prefix of
// length k holds, for every domain, within one of k * n_d / n items, and
// shorter prefixes are subsets of longer ones. Within a domain the order is
// a seeded shuffle.
class StratifiedChain {
 public:
  StratifiedChain(const std::vector<std::string>& domains, uint64_t seed);

  // Indices of the first `size` ranked items, in ascending (input) order.
  std::vector<size_t> Take(size_t size) const;

  size_t size() const { return ranked_.size(); }

 private:
  std::vector<size_t> ranked_;
};

// Deterministic Fisher-Yates; only depends on mt19937_64's raw stream.
void SeededShuffle(std::vector<size_t>& items, uint64_t seed);

// Errors: InvalidPair (any pair fails ValidatePair; message lists every
// offending row), SizeTooLarge.
absl::StatusOr<std::vector<SeedPair>> ExportSeedPairs(
    const std::vector<AnnotatedPair>& corpus, size_t size, uint64_t seed);

// marked_english<TAB>marked_cs<TAB>domain, one line per pair.
std::string SeedPairsToTsv(const std::vector<SeedPair>& pairs);

}  // namespace csaug

#endif  // CSAUG_MARKER_H_
