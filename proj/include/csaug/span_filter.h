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

#ifndef CSAUG_SPAN_FILTER_H_
#define CSAUG_SPAN_FILTER_H_

// Syntactic filter for generated code-switched utterances. A candidate is
// kept only when its span brackets can be aligned 1:1 with the English
// marked input, so that the English parse can be transferred onto it.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/strings/string_view.h"

#include "csaug/generation.h"
#include "json.hpp"

namespace csaug {

struct MarkedUtterance;

// Listed in check order. Attribution in reports uses the first entry that
// fired.
enum class Violation {
  kUnbalancedBrackets,
  kMalformedSpanId,
  kMismatchedSpanIds,
  kUnequalSpanCount,
  kMismatchedContainment,
};

absl::string_view ViolationName(Violation v);

// Id of a closing token "]_k" (k canonical, positive, base 10); 0 when no
// id can be extracted.
int ParseCloseToken(absl::string_view token);

// Plain tokens contain no bracket characters.
bool IsPlainToken(absl::string_view token);

struct Span {
  int id = 0;
  int depth = 1;   // 1 for top-level spans.
  int parent = 0;  // Enclosing span id, 0 for the utterance root.
  int begin = 0;   // Interior plain-token offsets, [begin, end).
  int end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct SpanSet {
  std::vector<Span> spans;  // In order of the opening bracket.
  std::vector<std::string> plain_tokens;
};

struct SpanExtraction {
  SpanSet span_set;  // Meaningful only when ok().
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Total: structural problems are reported in-band as kUnbalancedBrackets
// and/or kMalformedSpanId.
SpanExtraction ExtractSpans(absl::string_view marked_text);

struct ValidationVerdict {
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
};

struct FilterOptions {
  // Fifth rule: parent/child relation among span ids must match English.
  bool check_containment = true;
};

// Checks, in order: structure of the candidate (UnbalancedBrackets,
// MalformedSpanId; later checks are skipped if either fires), then id sets,
// span counts (a duplicated id counts as an extra span) and, when enabled
// and the ids are unique on both sides, the parent relation among ids.
// Every applicable violation is listed.
ValidationVerdict ValidatePair(const SpanSet& english, const SpanSet& cs,
                               const FilterOptions& options = {});
ValidationVerdict ValidatePair(const MarkedUtterance& english,
                               absl::string_view cs_marked,
                               const FilterOptions& options = {});
ValidationVerdict ValidatePair(absl::string_view english_marked,
                               absl::string_view cs_marked,
                               const FilterOptions& options = {});

struct ThroughputReport {
  int total = 0;
  int accepted = 0;
  std::map<Violation, int> rejected_by_rule;
  double throughput = 0.0;
};

// "82.0%"
std::string FormatPercent(double ratio);

struct RejectedRecord {
  GenerationRecord record;
  ValidationVerdict verdict;
};

struct FilterResult {
  std::vector<GenerationRecord> accepted;
  std::vector<RejectedRecord> rejected;
  ThroughputReport report;
};

// Each record is checked against the English marked text it was generated
// from (record.request.marked_text). Records keep their input order in both
// partitions. Throughput over zero records is 0.
FilterResult FilterCorpus(const std::vector<GenerationRecord>& records,
                          const FilterOptions& options = {});

nlohmann::json ToJson(const ThroughputReport& report);
// {"id", "candidate", "violations": [...]}
nlohmann::json ToJson(const RejectedRecord& rejected);
std::string RenderThroughputTable(const ThroughputReport& report);

}  // namespace csaug

#endif  // CSAUG_SPAN_FILTER_H_
