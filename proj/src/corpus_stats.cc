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

#include "csaug/corpus_stats.h"

#include <algorithm>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/file_util.h"
#include "csaug/top_tree.h"

namespace csaug {
namespace {

bool IsPunctOrDigits(absl::string_view token) {
  return std::all_of(token.begin(), token.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return absl::ascii_ispunct(u) || absl::ascii_isdigit(u);
  });
}

}  // namespace

std::string CaseFold(absl::string_view token) {
  return absl::AsciiStrToLower(token);
}

absl::StatusOr<Lexicon> LoadLexicon(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) {
    return MakeError(ErrorCode::kMissingLexicon, text.status().message());
  }
  Lexicon lexicon;
  for (absl::string_view line : absl::StrSplit(*text, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty()) lexicon.insert(CaseFold(line));
  }
  return lexicon;
}

Lexicon MakeLexicon(const std::vector<std::string>& words) {
  Lexicon lexicon;
  for (const std::string& w : words) lexicon.insert(CaseFold(w));
  return lexicon;
}

absl::StatusOr<std::unique_ptr<LexiconTagger>> LexiconTagger::Create(
    Lexicon lexicon_a, Lexicon lexicon_b, LanguageTag priority) {
  if (lexicon_a.empty() || lexicon_b.empty()) {
    return MakeError(ErrorCode::kMissingLexicon,
                     lexicon_a.empty() ? "lexicon A is empty"
                                       : "lexicon B is empty");
  }
  return std::unique_ptr<LexiconTagger>(
      new LexiconTagger(std::move(lexicon_a), std::move(lexicon_b), priority));
}

LexiconTagger::LexiconTagger(Lexicon a, Lexicon b, LanguageTag priority)
    : lexicon_a_(std::move(a)), lexicon_b_(std::move(b)), priority_(priority) {}

LanguageTag LexiconTagger::Tag(absl::string_view token) const {
  if (token.empty() || IsPunctOrDigits(token)) return LanguageTag::kOther;
  const std::string folded = CaseFold(token);
  const bool in_a = lexicon_a_.contains(folded);
  const bool in_b = lexicon_b_.contains(folded);
  if (in_a && in_b) return priority_;
  if (in_a) return LanguageTag::kLangA;
  if (in_b) return LanguageTag::kLangB;
  return LanguageTag::kOther;
}

LanguageTagging TagTokens(absl::string_view text, const TokenTagger& tagger) {
  LanguageTagging out;
  for (std::string& tok : Tokenize(text)) {
    const LanguageTag tag = tagger.Tag(tok);
    out.push_back({std::move(tok), tag});
  }
  return out;
}

int CsPoints(const LanguageTagging& tags) {
  int points = 0;
  const TaggedToken* prev = nullptr;
  for (const TaggedToken& t : tags) {
    if (t.tag == LanguageTag::kOther) continue;
    if (prev != nullptr && prev->tag != t.tag) ++points;
    prev = &t;
  }
  return points;
}

absl::StatusOr<CorpusStats> ComputeCorpusStats(
    const std::vector<std::string>& corpus, const TokenTagger& tagger) {
  if (corpus.empty()) {
    return MakeError(ErrorCode::kEmptyCorpus, "no utterances");
  }
  std::unordered_set<std::string> vocab_a, vocab_b;
  long tokens_a = 0, tokens_b = 0, points = 0;
  for (const std::string& utterance : corpus) {
    const LanguageTagging tags = TagTokens(utterance, tagger);
    for (const TaggedToken& t : tags) {
      if (t.tag == LanguageTag::kLangA) {
        ++tokens_a;
        vocab_a.insert(CaseFold(t.token));
      } else if (t.tag == LanguageTag::kLangB) {
        ++tokens_b;
        vocab_b.insert(CaseFold(t.token));
      }
    }
    points += CsPoints(tags);
  }
  CorpusStats stats;
  stats.vocab_a = static_cast<int>(vocab_a.size());
  stats.vocab_b = static_cast<int>(vocab_b.size());
  stats.total_utterances = static_cast<int>(corpus.size());
  const double n = static_cast<double>(corpus.size());
  stats.avg_tokens_a = tokens_a / n;
  stats.avg_tokens_b = tokens_b / n;
  stats.avg_cs_points = points / n;
  return stats;
}

CorpusStats HinglishTopReference() {
  CorpusStats s;
  s.vocab_a = 4857;
  s.vocab_b = 1931;
  s.total_utterances = 10896;
  s.avg_tokens_a = 3.82;
  s.avg_tokens_b = 4.36;
  s.avg_cs_points = 3.56;
  return s;
}

nlohmann::json ToJson(const CorpusStats& stats) {
  return {{"vocab_a", stats.vocab_a},
          {"vocab_b", stats.vocab_b},
          {"total_utterances", stats.total_utterances},
          {"avg_tokens_a", stats.avg_tokens_a},
          {"avg_tokens_b", stats.avg_tokens_b},
          {"avg_cs_points", stats.avg_cs_points}};
}

std::string RenderStatsTable(const CorpusStats& stats,
                             const StatsLanguageNames& names,
                             const CorpusStats* reference) {
  struct Row {
    std::string name;
    std::string value;
    std::string ref;
  };
  auto count = [](int v) { return absl::StrCat(v); };
  auto avg = [](double v) { return absl::StrFormat("%.2f", v); };
  const CorpusStats& r = reference != nullptr ? *reference : stats;
  const std::vector<Row> rows = {
      {absl::StrCat(names.lang_a, " Vocabulary size"), count(stats.vocab_a),
       count(r.vocab_a)},
      {absl::StrCat(names.lang_b, " Vocabulary size"), count(stats.vocab_b),
       count(r.vocab_b)},
      {"Total utterances", count(stats.total_utterances),
       count(r.total_utterances)},
      {absl::StrCat("Avg. # of ", names.lang_b, " tokens per utterance"),
       avg(stats.avg_tokens_b), avg(r.avg_tokens_b)},
      {absl::StrCat("Avg. # of ", names.lang_a, " tokens per utterance"),
       avg(stats.avg_tokens_a), avg(r.avg_tokens_a)},
      {"Avg. # of CS points per utterance", avg(stats.avg_cs_points),
       avg(r.avg_cs_points)},
  };
  size_t width = 0;
  for (const Row& row : rows) width = std::max(width, row.name.size());
  std::string out;
  if (reference != nullptr) {
    absl::StrAppendFormat(&out, "%-*s %10s %10s\n", width, "", "computed",
                          "reference");
  }
  for (const Row& row : rows) {
    absl::StrAppendFormat(&out, "%-*s %10s", width, row.name, row.value);
    if (reference != nullptr) absl::StrAppendFormat(&out, " %10s", row.ref);
    out += '\n';
  }
  return out;
}

}  // namespace csaug
