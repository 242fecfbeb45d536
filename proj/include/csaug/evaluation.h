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

#ifndef CSAUG_EVALUATION_H_
#define CSAUG_EVALUATION_H_

// Exact-match evaluation of predicted parses against gold, overall and per
// domain. Predictions and gold are paired by line order.

#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "csaug/corpus_io.h"
#include "json.hpp"

namespace csaug {

struct MatchCount {
  int matched = 0;
  int total = 0;

  friend bool operator==(const MatchCount&, const MatchCount&) = default;
};

struct EvalReport {
  double overall_em = 0.0;
  MatchCount overall;
  std::map<std::string, double> per_domain_em;
  std::map<std::string, MatchCount> counts;
  // Predictions that did not parse; scored as misses.
  int unparseable_predictions = 0;
};

// Rows are (domain, utterance, parse). Domains come from gold.
//
// Errors: KeyMismatch (row counts differ, or the utterances at a position
// differ); UnparseableGold.
absl::StatusOr<EvalReport> Evaluate(const std::vector<TsvRow>& predictions,
                                    const std::vector<TsvRow>& gold);

absl::StatusOr<EvalReport> EvaluateFiles(const std::string& predictions_path,
                                         const std::string& gold_path,
                                         bool header);

nlohmann::json ToJson(const EvalReport& report);
std::string RenderEvalTable(const EvalReport& report);

}  // namespace csaug

#endif  // CSAUG_EVALUATION_H_
