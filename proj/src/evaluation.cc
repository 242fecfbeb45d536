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

#include "csaug/evaluation.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "csaug/errors.h"
#include "csaug/status_macros.h"
#include "csaug/top_tree.h"

namespace csaug {
namespace {

double Ratio(const MatchCount& c) {
  return c.total == 0 ? 0.0 : static_cast<double>(c.matched) / c.total;
}

absl::StatusOr<std::vector<TsvRow>> ReadAll(const std::string& path,
                                            bool header) {
  ASSIGN_OR_RETURN(TsvReader reader, TsvReader::Open(path, 3, header));
  std::vector<TsvRow> rows;
  TsvRow row;
  while (true) {
    ASSIGN_OR_RETURN(bool more, reader.Next(row));
    if (!more) break;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

absl::StatusOr<EvalReport> Evaluate(const std::vector<TsvRow>& predictions,
                                    const std::vector<TsvRow>& gold) {
  if (predictions.size() != gold.size()) {
    return MakeError(ErrorCode::kKeyMismatch,
                     absl::StrCat(predictions.size(), " predictions vs ",
                                  gold.size(), " gold rows"));
  }
  EvalReport report;
  for (size_t i = 0; i < gold.size(); ++i) {
    const TsvRow& g = gold[i];
    const TsvRow& p = predictions[i];
    if (Tokenize(g.columns.at(1)) != Tokenize(p.columns.at(1))) {
      return MakeError(ErrorCode::kKeyMismatch,
                       absl::StrCat("row ", i + 1, ": gold line ", g.line,
                                    " and prediction line ", p.line,
                                    " have different utterances"));
    }
    absl::StatusOr<ParseTree> gold_tree = ParseTop(g.columns[2]);
    if (!gold_tree.ok()) {
      return MakeError(ErrorCode::kUnparseableGold,
                       absl::StrCat("gold line ", g.line, ": ",
                                    gold_tree.status().message()));
    }
    absl::StatusOr<ParseTree> pred_tree = ParseTop(p.columns[2]);
    const bool match = pred_tree.ok() && ExactMatch(*pred_tree, *gold_tree);
    if (!pred_tree.ok()) ++report.unparseable_predictions;
    MatchCount& c = report.counts[g.columns[0]];
    ++c.total;
    ++report.overall.total;
    if (match) {
      ++c.matched;
      ++report.overall.matched;
    }
  }
  report.overall_em = Ratio(report.overall);
  for (const auto& [domain, c] : report.counts) {
    report.per_domain_em[domain] = Ratio(c);
  }
  return report;
}

absl::StatusOr<EvalReport> EvaluateFiles(const std::string& predictions_path,
                                         const std::string& gold_path,
                                         bool header) {
  ASSIGN_OR_RETURN(std::vector<TsvRow> pred, ReadAll(predictions_path, header));
  ASSIGN_OR_RETURN(std::vector<TsvRow> gold, ReadAll(gold_path, header));
  return Evaluate(pred, gold);
}

nlohmann::json ToJson(const EvalReport& report) {
  nlohmann::json domains = nlohmann::json::object();
  for (const auto& [domain, c] : report.counts) {
    domains[domain] = {{"em", report.per_domain_em.at(domain)},
                       {"matched", c.matched},
                       {"total", c.total}};
  }
  return {{"overall_em", report.overall_em},
          {"matched", report.overall.matched},
          {"total", report.overall.total},
          {"unparseable_predictions", report.unparseable_predictions},
          {"per_domain", domains}};
}

std::string RenderEvalTable(const EvalReport& report) {
  std::string out;
  absl::StrAppendFormat(&out, "%-20s %8s %8s %8s\n", "domain", "matched",
                        "total", "EM");
  for (const auto& [domain, c] : report.counts) {
    absl::StrAppendFormat(&out, "%-20s %8d %8d %7.1f%%\n", domain, c.matched,
                          c.total, 100.0 * report.per_domain_em.at(domain));
  }
  absl::StrAppendFormat(&out, "%-20s %8d %8d %7.1f%%\n", "overall",
                        report.overall.matched, report.overall.total,
                        100.0 * report.overall_em);
  if (report.unparseable_predictions > 0) {
    absl::StrAppendFormat(&out, "unparseable predictions: %d\n",
                          report.unparseable_predictions);
  }
  return out;
}

}  // namespace csaug
