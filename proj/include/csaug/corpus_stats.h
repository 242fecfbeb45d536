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

#ifndef CSAUG_CORPUS_STATS_H_
#define CSAUG_CORPUS_STATS_H_

// Code-switched corpus statistics: per-language vocabulary sizes and token
// averages, and the average number of code-switch points per utterance.

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace csaug {

enum class LanguageTag { kLangA, kLangB, kOther };

struct TaggedToken {
  std::string token;
  LanguageTag tag = LanguageTag::kOther;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

using LanguageTagging = std::vector<TaggedToken>;

// Token-level language identification.
class TokenTagger {
 public:
  virtual ~TokenTagger() = default;
  virtual LanguageTag Tag(absl::string_view token) const = 0;
};

using Lexicon = std::unordered_set<std::string>;

// One word per line; entries are case-folded. MissingLexicon if the file
// cannot be read.
absl::StatusOr<Lexicon> LoadLexicon(const std::string& path);
Lexicon MakeLexicon(const std::vector<std::string>& words);

// Case-insensitive lexicon lookup. Tokens made only of ASCII punctuation and
// digits are kOther; a token in both lexicons gets the priority language.
class LexiconTagger : public TokenTagger {
 public:
  // MissingLexicon if either lexicon is empty.
  static absl::StatusOr<std::unique_ptr<LexiconTagger>> Create(
      Lexicon lexicon_a, Lexicon lexicon_b,
      LanguageTag priority = LanguageTag::kLangA);

  LanguageTag Tag(absl::string_view token) const override;

 private:
  LexiconTagger(Lexicon a, Lexicon b, LanguageTag priority);

  Lexicon lexicon_a_;
  Lexicon lexicon_b_;
  LanguageTag priority_;
};

std::string CaseFold(absl::string_view token);

LanguageTagging TagTokens(absl::string_view text, const TokenTagger& tagger);

// Adjacent tag changes after dropping kOther tokens.
int CsPoints(const LanguageTagging& tags);

struct CorpusStats {
  int vocab_a = 0;
  int vocab_b = 0;
  int total_utterances = 0;
  double avg_tokens_a = 0.0;
  double avg_tokens_b = 0.0;
  double avg_cs_points = 0.0;
};

// EmptyCorpus on an empty input.
absl::StatusOr<CorpusStats> ComputeCorpusStats(
    const std::vector<std::string>& corpus, const TokenTagger& tagger);

struct StatsLanguageNames {
  std::string lang_a = "English";
  std::string lang_b = "Romanized Hindi";
};

// Published figures for the human-annotated Hinglish-TOP release, used only
// as a comparison column.
CorpusStats HinglishTopReference();

nlohmann::json ToJson(const CorpusStats& stats);
std::string RenderStatsTable(const CorpusStats& stats,
                             const StatsLanguageNames& names = {},
                             const CorpusStats* reference = nullptr);

}  // namespace csaug

#endif  // CSAUG_CORPUS_STATS_H_
