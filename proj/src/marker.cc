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

#include "csaug/marker.h"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/span_filter.h"

namespace csaug {
namespace {

void MarkNode(const ParseNode& node, std::vector<int>& path, int& next_id,
              MarkedUtterance& out) {
  if (node.is_token()) {
    out.tokens.push_back({MarkedToken::Type::kPlain, node.text, 0});
    return;
  }
  const bool is_root = path.empty();
  int id = 0;
  if (!is_root) {
    id = next_id++;
    out.span_map[id] = {path, node.kind, node.label};
    out.tokens.push_back({MarkedToken::Type::kOpen, "", 0});
  }
  for (size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    MarkNode(node.children[i], path, next_id, out);
    path.pop_back();
  }
  if (!is_root) out.tokens.push_back({MarkedToken::Type::kClose, "", id});
}

uint64_t Fnv1a(absl::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Uniform in [0, bound) by rejection on the raw 64-bit stream.
uint64_t Bounded(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::string CloseToken(int span_id) { return absl::StrCat("]_", span_id); }

std::string MarkedUtterance::Text() const {
  std::string out;
  for (const MarkedToken& tok : tokens) {
    if (!out.empty()) out += ' ';
    switch (tok.type) {
      case MarkedToken::Type::kPlain:
        out += tok.text;
        break;
      case MarkedToken::Type::kOpen:
        out += '[';
        break;
      case MarkedToken::Type::kClose:
        out += CloseToken(tok.span_id);
        break;
    }
  }
  return out;
}

MarkedUtterance MarkTree(const ParseTree& tree) {
  MarkedUtterance out;
  out.root_label = tree.root.label;
  std::vector<int> path;
  int next_id = 1;
  MarkNode(tree.root, path, next_id, out);
  return out;
}

absl::StatusOr<MarkedUtterance> MarkUtterance(const Utterance& utterance) {
  if (!utterance.parse.has_value()) {
    return MakeError(ErrorCode::kMisalignedParse, "utterance has no parse");
  }
  if (TreeTokens(*utterance.parse) != Tokenize(utterance.text)) {
    return MakeError(ErrorCode::kMisalignedParse,
                     absl::StrCat("parse tokens differ from '", utterance.text,
                                  "'"));
  }
  return MarkTree(*utterance.parse);
}

absl::StatusOr<std::string> StripMarks(absl::string_view marked_text) {
  SpanExtraction extraction = ExtractSpans(marked_text);
  if (!extraction.ok()) {
    std::vector<absl::string_view> names;
    for (Violation v : extraction.violations) {
      names.push_back(ViolationName(v));
    }
    return MakeError(ErrorCode::kStructuralError,
                     absl::StrJoin(names, ", "));
  }
  return absl::StrJoin(extraction.span_set.plain_tokens, " ");
}

void SeededShuffle(std::vector<size_t>& items, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = Bounded(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

StratifiedChain::StratifiedChain(const std::vector<std::string>& domains,
                                 uint64_t seed) {
  std::map<std::string, std::vector<size_t>> by_domain;
  for (size_t i = 0; i < domains.size(); ++i) {
    by_domain[domains[i]].push_back(i);
  }
  std::vector<std::vector<size_t>> groups;
  for (auto& [name, members] : by_domain) {
    SeededShuffle(members, seed ^ Fnv1a(name));
    groups.push_back(std::move(members));
  }

  // Seat-by-seat apportionment: each step goes to the domain furthest
  // below its proportional share k * n_d / n.
  const int64_t total = static_cast<int64_t>(domains.size());
  std::vector<int64_t> taken(groups.size(), 0);
  ranked_.reserve(domains.size());
  for (int64_t k = 1; k <= total; ++k) {
    size_t best = groups.size();
    int64_t best_deficit = 0;
    for (size_t d = 0; d < groups.size(); ++d) {
      const int64_t n_d = static_cast<int64_t>(groups[d].size());
      if (taken[d] >= n_d) continue;
      const int64_t deficit = k * n_d - taken[d] * total;
      if (best == groups.size() || deficit > best_deficit) {
        best = d;
        best_deficit = deficit;
      }
    }
    ranked_.push_back(groups[best][taken[best]++]);
  }
}

std::vector<size_t> StratifiedChain::Take(size_t size) const {
  std::vector<size_t> out(ranked_.begin(),
                          ranked_.begin() + std::min(size, ranked_.size()));
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<std::vector<SeedPair>> ExportSeedPairs(
    const std::vector<AnnotatedPair>& corpus, size_t size, uint64_t seed) {
  if (size > corpus.size()) {
    return MakeError(ErrorCode::kSizeTooLarge,
                     absl::StrCat("requested ", size, " pairs from a corpus of ",
                                  corpus.size()));
  }
  std::vector<SeedPair> all;
  all.reserve(corpus.size());
  std::vector<std::string> problems;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const AnnotatedPair& pair = corpus[i];
    absl::StatusOr<MarkedUtterance> marked = MarkUtterance(pair.english);
    if (!marked.ok()) {
      problems.push_back(
          absl::StrCat("pair ", i, ": ", marked.status().message()));
      continue;
    }
    const ValidationVerdict verdict = ValidatePair(*marked, pair.cs_marked);
    if (!verdict.pass()) {
      std::vector<absl::string_view> names;
      for (Violation v : verdict.violations) names.push_back(ViolationName(v));
      problems.push_back(
          absl::StrCat("pair ", i, ": ", absl::StrJoin(names, ",")));
      continue;
    }
    all.push_back({*std::move(marked), pair.cs_marked, pair.english.domain});
  }
  if (!problems.empty()) {
    return MakeError(ErrorCode::kInvalidPair,
                     absl::StrCat(problems.size(), " invalid pair(s): ",
                                  absl::StrJoin(problems, "; ")));
  }

  std::vector<std::string> domains;
  domains.reserve(all.size());
  for (const SeedPair& p : all) domains.push_back(p.domain);
  std::vector<SeedPair> out;
  out.reserve(size);
  for (size_t index : StratifiedChain(domains, seed).Take(size)) {
    out.push_back(all[index]);
  }
  return out;
}

std::string SeedPairsToTsv(const std::vector<SeedPair>& pairs) {
  std::string out;
  for (const SeedPair& p : pairs) {
    absl::StrAppend(&out, p.input.Text(), "\t", p.target, "\t", p.domain,
                    "\n");
  }
  return out;
}

}  // namespace csaug
