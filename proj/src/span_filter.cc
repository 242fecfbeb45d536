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

#include "csaug/span_filter.h"

#include <algorithm>
#include <set>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "csaug/marker.h"
#include "csaug/top_tree.h"

namespace csaug {
namespace {

constexpr Violation kAllViolations[] = {
    Violation::kUnbalancedBrackets, Violation::kMalformedSpanId,
    Violation::kMismatchedSpanIds, Violation::kUnequalSpanCount,
    Violation::kMismatchedContainment};

}  // namespace

int ParseCloseToken(absl::string_view tok) {
  if (!absl::ConsumePrefix(&tok, "]_")) return 0;
  if (tok.empty() || tok.size() > 9 || tok[0] == '0') return 0;
  for (char c : tok) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(c))) return 0;
  }
  int id = 0;
  if (!absl::SimpleAtoi(tok, &id)) return 0;
  return id;
}

bool IsPlainToken(absl::string_view token) {
  return !absl::StrContains(token, '[') && !absl::StrContains(token, ']');
}

absl::string_view ViolationName(Violation v) {
  switch (v) {
    case Violation::kUnbalancedBrackets:
      return "UnbalancedBrackets";
    case Violation::kMalformedSpanId:
      return "MalformedSpanId";
    case Violation::kMismatchedSpanIds:
      return "MismatchedSpanIds";
    case Violation::kUnequalSpanCount:
      return "UnequalSpanCount";
    case Violation::kMismatchedContainment:
      return "MismatchedContainment";
  }
  return "?";
}

SpanExtraction ExtractSpans(absl::string_view marked_text) {
  SpanExtraction out;
  SpanSet& set = out.span_set;
  bool unbalanced = false;
  bool malformed = false;
  // Slots in set.spans for currently open brackets, innermost last.
  std::vector<size_t> open;
  // Parent slot for each span (npos for root), resolved to ids at the end.
  std::vector<size_t> parent_slot;
  constexpr size_t kNone = static_cast<size_t>(-1);

  for (const std::string& tok : Tokenize(marked_text)) {
    const int offset = static_cast<int>(set.plain_tokens.size());
    if (tok == "[") {
      parent_slot.push_back(open.empty() ? kNone : open.back());
      open.push_back(set.spans.size());
      set.spans.push_back(
          {0, static_cast<int>(open.size()), 0, offset, offset});
    } else if (absl::StartsWith(tok, "]")) {
      const int id = ParseCloseToken(tok);
      if (id == 0) malformed = true;
      if (open.empty()) {
        unbalanced = true;
        continue;
      }
      Span& span = set.spans[open.back()];
      span.id = id;
      span.end = offset;
      open.pop_back();
    } else if (!IsPlainToken(tok)) {
      malformed = true;
    } else {
      set.plain_tokens.push_back(tok);
    }
  }
  if (!open.empty()) unbalanced = true;

  if (unbalanced) out.violations.push_back(Violation::kUnbalancedBrackets);
  if (malformed) out.violations.push_back(Violation::kMalformedSpanId);
  if (!out.ok()) {
    out.span_set = SpanSet();
    return out;
  }
  for (size_t i = 0; i < set.spans.size(); ++i) {
    set.spans[i].parent =
        parent_slot[i] == kNone ? 0 : set.spans[parent_slot[i]].id;
  }
  return out;
}

ValidationVerdict ValidatePair(const SpanSet& english, const SpanSet& cs,
                               const FilterOptions& options) {
  ValidationVerdict verdict;
  std::multiset<int> en_ids, cs_ids;
  for (const Span& s : english.spans) en_ids.insert(s.id);
  for (const Span& s : cs.spans) cs_ids.insert(s.id);
  const std::set<int> en_set(en_ids.begin(), en_ids.end());
  const std::set<int> cs_set(cs_ids.begin(), cs_ids.end());

  const bool ids_match = en_set == cs_set;
  if (!ids_match) verdict.violations.push_back(Violation::kMismatchedSpanIds);
  if (en_ids.size() != cs_ids.size()) {
    verdict.violations.push_back(Violation::kUnequalSpanCount);
  }
  const bool cs_unique = cs_set.size() == cs_ids.size();
  const bool en_unique = en_set.size() == en_ids.size();
  if (options.check_containment && ids_match && cs_unique && en_unique) {
    std::map<int, int> en_parent;
    for (const Span& s : english.spans) en_parent[s.id] = s.parent;
    const bool same = std::all_of(
        cs.spans.begin(), cs.spans.end(),
        [&](const Span& s) { return en_parent.at(s.id) == s.parent; });
    if (!same) verdict.violations.push_back(Violation::kMismatchedContainment);
  }
  return verdict;
}

ValidationVerdict ValidatePair(absl::string_view english_marked,
                               absl::string_view cs_marked,
                               const FilterOptions& options) {
  SpanExtraction cs = ExtractSpans(cs_marked);
  if (!cs.ok()) return {cs.violations};
  // The English side is marker output; a structural failure there means the
  // record was not produced by the marker, and is reported the same way.
  SpanExtraction en = ExtractSpans(english_marked);
  if (!en.ok()) return {en.violations};
  return ValidatePair(en.span_set, cs.span_set, options);
}

ValidationVerdict ValidatePair(const MarkedUtterance& english,
                               absl::string_view cs_marked,
                               const FilterOptions& options) {
  return ValidatePair(english.Text(), cs_marked, options);
}

std::string FormatPercent(double ratio) {
  return absl::StrFormat("%.1f%%", ratio * 100.0);
}

FilterResult FilterCorpus(const std::vector<GenerationRecord>& records,
                          const FilterOptions& options) {
  FilterResult result;
  ThroughputReport& report = result.report;
  for (Violation v : kAllViolations) report.rejected_by_rule[v] = 0;
  for (const GenerationRecord& record : records) {
    ValidationVerdict verdict =
        ValidatePair(record.request.marked_text, record.candidate, options);
    ++report.total;
    if (verdict.pass()) {
      ++report.accepted;
      result.accepted.push_back(record);
    } else {
      ++report.rejected_by_rule[verdict.violations.front()];
      result.rejected.push_back({record, std::move(verdict)});
    }
  }
  report.throughput =
      report.total == 0
          ? 0.0
          : static_cast<double>(report.accepted) / report.total;
  return result;
}

nlohmann::json ToJson(const ThroughputReport& report) {
  nlohmann::json by_rule = nlohmann::json::object();
  int rejected = 0;
  for (const auto& [rule, count] : report.rejected_by_rule) {
    by_rule[std::string(ViolationName(rule))] = count;
    rejected += count;
  }
  return {{"total", report.total},
          {"accepted", report.accepted},
          {"rejected", rejected},
          {"rejected_by_rule", by_rule},
          {"throughput", report.throughput},
          {"throughput_percent", FormatPercent(report.throughput)}};
}

nlohmann::json ToJson(const RejectedRecord& rejected) {
  nlohmann::json violations = nlohmann::json::array();
  for (Violation v : rejected.verdict.violations) {
    violations.push_back(std::string(ViolationName(v)));
  }
  return {{"id", rejected.record.request.id},
          {"candidate", rejected.record.candidate},
          {"violations", violations}};
}

std::string RenderThroughputTable(const ThroughputReport& report) {
  int rejected = 0;
  for (const auto& [rule, count] : report.rejected_by_rule) rejected += count;
  std::string out = "Filter throughput\n";
  absl::StrAppendFormat(&out, "  %-24s %8d\n", "total", report.total);
  absl::StrAppendFormat(&out, "  %-24s %8d\n", "accepted", report.accepted);
  absl::StrAppendFormat(&out, "  %-24s %8d\n", "rejected", rejected);
  for (const auto& [rule, count] : report.rejected_by_rule) {
    absl::StrAppendFormat(&out, "    %-22s %8d\n", ViolationName(rule), count);
  }
  absl::StrAppendFormat(&out, "  %-24s %8s\n", "throughput",
                        FormatPercent(report.throughput));
  return out;
}

}  // namespace csaug
