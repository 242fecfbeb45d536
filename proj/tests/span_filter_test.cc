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

#include <string>
#include <vector>

#include "csaug/gen_client.h"
#include "csaug/marker.h"
#include "gtest/gtest.h"
#include "testing/random_top.h"

namespace csaug {
namespace {

using V = Violation;
using Vs = std::vector<Violation>;

Vs Check(absl::string_view en, absl::string_view cs,
         const FilterOptions& options = {}) {
  return ValidatePair(en, cs, options).violations;
}

// The four rows of the published error taxonomy, verbatim apart from
// subscripts being written as fused close tokens.
constexpr char kRow1En[] =
    "[ 9 pm ]_1 [ appointment for photos ]_2 and remind [ me ]_3 "
    "[ an hour before ]_4";
constexpr char kRow1Cs[] =
    "[ mujhe ]_3 [ 9 pm ]_1 ko [ photos ke liye appointment ]_2 hai aur "
    "[ mujhe ]_3 [ ek ghante pehle ]_4 yaad dilaayen";
constexpr char kRow2En[] =
    "play [ song ]_1 [ Heart is on fire ]_2 on [ spotify ]_3";
constexpr char kRow2Cs[] =
    "[ spotify ]_3 par [ song ]_1 [ Heart is on fire ]_two ko bajao";
constexpr char kRow3En[] =
    "Change [ banking ]_1 reminders [ from ]_2 [ once a week ]_3 [ to ]_4 "
    "[ twice a week ]_5";
constexpr char kRow3Cs[] =
    "[ banking ]_1 reminders ko [ [ ek bar har week ]_3 [ dohrayen ]_4";
constexpr char kRow4En[] =
    "Remind [ me ]_1 to [ email ]_2 [ Michelle ]_3 [ on Tuesday ]_4 "
    "[ about ]_5 [ the recital ]_6";
constexpr char kRow4Cs[] =
    "[ Mujhe ]_1 [ Tuesday ko ]_7 [ Michelle ]_3 ko [ email ]_2 karne ke "
    "liye yaad dilaayen";

TEST(ErrorTaxonomyTest, DuplicatedSpanIsUnequalSpanCount) {
  EXPECT_EQ(Check(kRow1En, kRow1Cs), Vs{V::kUnequalSpanCount});
}

TEST(ErrorTaxonomyTest, WordIdIsMalformedSpanId) {
  EXPECT_EQ(Check(kRow2En, kRow2Cs), Vs{V::kMalformedSpanId});
  EXPECT_EQ(ExtractSpans(kRow2Cs).violations, Vs{V::kMalformedSpanId});
}

TEST(ErrorTaxonomyTest, ExtraOpenIsUnbalancedBrackets) {
  EXPECT_EQ(Check(kRow3En, kRow3Cs), Vs{V::kUnbalancedBrackets});
  EXPECT_EQ(ExtractSpans(kRow3Cs).violations, Vs{V::kUnbalancedBrackets});
}

TEST(ErrorTaxonomyTest, ForeignIdIsMismatchedSpanIds) {
  // The dropped spans also change the count; the id mismatch comes first.
  EXPECT_EQ(Check(kRow4En, kRow4Cs),
            (Vs{V::kMismatchedSpanIds, V::kUnequalSpanCount}));
}

TEST(ParseCloseTokenTest, Grammar) {
  EXPECT_EQ(ParseCloseToken("]_1"), 1);
  EXPECT_EQ(ParseCloseToken("]_42"), 42);
  EXPECT_EQ(ParseCloseToken("]_"), 0);
  EXPECT_EQ(ParseCloseToken("]_0"), 0);
  EXPECT_EQ(ParseCloseToken("]_01"), 0);
  EXPECT_EQ(ParseCloseToken("]_two"), 0);
  EXPECT_EQ(ParseCloseToken("]_-1"), 0);
  EXPECT_EQ(ParseCloseToken("]_1x"), 0);
  EXPECT_EQ(ParseCloseToken("]"), 0);
  EXPECT_EQ(ParseCloseToken("]_1234567890"), 0);
}

TEST(ExtractSpansTest, SingleSpan) {
  const SpanExtraction ex = ExtractSpans("a [ b ]_1 c");
  ASSERT_TRUE(ex.ok());
  ASSERT_EQ(ex.span_set.spans.size(), 1u);
  EXPECT_EQ(ex.span_set.spans[0], (Span{1, 1, 0, 1, 2}));
  EXPECT_EQ(ex.span_set.plain_tokens, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(ExtractSpansTest, NestedInOpenOrder) {
  const SpanExtraction ex = ExtractSpans("[ [ w ]_2 v ]_1 u");
  ASSERT_TRUE(ex.ok());
  ASSERT_EQ(ex.span_set.spans.size(), 2u);
  EXPECT_EQ(ex.span_set.spans[0], (Span{1, 1, 0, 0, 2}));
  EXPECT_EQ(ex.span_set.spans[1], (Span{2, 2, 1, 0, 1}));
}

TEST(ExtractSpansTest, StructuralFailures) {
  EXPECT_EQ(ExtractSpans("a ]_1").violations, Vs{V::kUnbalancedBrackets});
  EXPECT_EQ(ExtractSpans("[ a").violations, Vs{V::kUnbalancedBrackets});
  EXPECT_EQ(ExtractSpans("[ a ]").violations, Vs{V::kMalformedSpanId});
  EXPECT_EQ(ExtractSpans("[ a ]_1 b]").violations, Vs{V::kMalformedSpanId});
  EXPECT_EQ(ExtractSpans("[ a ]_1 [b").violations, Vs{V::kMalformedSpanId});
  EXPECT_EQ(ExtractSpans("[ a ]_x ]_2").violations,
            (Vs{V::kUnbalancedBrackets, V::kMalformedSpanId}));
  EXPECT_TRUE(ExtractSpans("[ a ]_x ]_2").span_set.spans.empty());
  EXPECT_TRUE(ExtractSpans("").ok());
}

TEST(ValidatePairTest, Rules) {
  EXPECT_TRUE(Check("a [ b ]_1", "x [ y ]_1 z").empty());
  EXPECT_EQ(Check("a [ b ]_1", "x"),
            (Vs{V::kMismatchedSpanIds, V::kUnequalSpanCount}));
  EXPECT_EQ(Check("[ a ]_1 [ b ]_2", "[ a ]_1 [ b ]_3"),
            Vs{V::kMismatchedSpanIds});
  // Nesting changed: 2 inside 1 in English, siblings in CS.
  EXPECT_EQ(Check("[ a [ b ]_2 ]_1", "[ a ]_1 [ b ]_2"),
            Vs{V::kMismatchedContainment});
  FilterOptions lax;
  lax.check_containment = false;
  EXPECT_TRUE(Check("[ a [ b ]_2 ]_1", "[ a ]_1 [ b ]_2", lax).empty());
  // Inverted nesting.
  EXPECT_EQ(Check("[ a [ b ]_2 ]_1", "[ [ b ]_1 a ]_2"),
            Vs{V::kMismatchedContainment});
}

TEST(ValidatePairTest, StructuralChecksAbortTheRest) {
  EXPECT_EQ(Check("[ a ]_1", "[ a ]_1 [ b ]_9 ]_3"), Vs{V::kUnbalancedBrackets});
}

TEST(ValidatePairTest, EmptyCandidate) {
  EXPECT_EQ(Check("a [ b ]_1", ""),
            (Vs{V::kMismatchedSpanIds, V::kUnequalSpanCount}));
  EXPECT_TRUE(Check("a b", "").empty());
}

TEST(ValidatePairTest, SelfPairPassesOnRandomMarkerOutput) {
  testing::RandomTopGenerator gen(31);
  for (int i = 0; i < 500; ++i) {
    const MarkedUtterance m = MarkTree(*gen.Next().utterance.parse);
    ASSERT_TRUE(ValidatePair(m, m.Text()).pass()) << m.Text();
  }
}

GenerationRecord Record(int id, const std::string& en, const std::string& cs) {
  return {{std::to_string(id), "d", en}, cs, "test", ""};
}

TEST(FilterCorpusTest, EmptyInput) {
  const FilterResult r = FilterCorpus({});
  EXPECT_EQ(r.report.total, 0);
  EXPECT_EQ(r.report.accepted, 0);
  EXPECT_EQ(r.report.throughput, 0.0);
  EXPECT_TRUE(r.accepted.empty());
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.report.rejected_by_rule.size(), 5u);
}

TEST(FilterCorpusTest, HalfFaithfulHalfMalformed) {
  testing::RandomTopGenerator gen(32, 2);
  std::vector<GenerationRecord> records;
  int made = 0;
  while (made < 100) {
    const MarkedUtterance m = MarkTree(*gen.Next().utterance.parse);
    if (m.span_map.empty()) continue;
    const MockMode mode = made % 2 == 0 ? MockMode::kFaithful
                                        : MockMode::kCorruptR2;
    GenerationRecord r = MockGenerate({std::to_string(made), "d", m.Text()},
                                      {}, mode);
    records.push_back(r);
    ++made;
  }
  const FilterResult r = FilterCorpus(records);
  EXPECT_EQ(r.report.total, 100);
  EXPECT_EQ(r.report.accepted, 50);
  EXPECT_DOUBLE_EQ(r.report.throughput, 0.5);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kMalformedSpanId), 50);
  EXPECT_EQ(r.accepted.size() + r.rejected.size(), records.size());
}

TEST(FilterCorpusTest, AttributesFirstViolationAndKeepsAll) {
  const std::vector<GenerationRecord> records = {
      Record(1, kRow1En, kRow1Cs), Record(2, kRow2En, kRow2Cs),
      Record(3, kRow3En, kRow3Cs), Record(4, kRow4En, kRow4Cs),
      Record(5, kRow4En, kRow4En)};
  const FilterResult r = FilterCorpus(records);
  EXPECT_EQ(r.report.accepted, 1);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kUnequalSpanCount), 1);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kMalformedSpanId), 1);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kUnbalancedBrackets), 1);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kMismatchedSpanIds), 1);
  EXPECT_EQ(r.report.rejected_by_rule.at(V::kMismatchedContainment), 0);
  ASSERT_EQ(r.rejected.size(), 4u);
  EXPECT_EQ(r.rejected[3].verdict.violations.size(), 2u);
  const nlohmann::json j = ToJson(r.rejected[3]);
  EXPECT_EQ(j["id"], "4");
  EXPECT_EQ(j["candidate"], kRow4Cs);
  EXPECT_EQ(j["violations"],
            nlohmann::json::array({"MismatchedSpanIds", "UnequalSpanCount"}));
}

TEST(FilterCorpusTest, OrderInsensitive) {
  std::vector<GenerationRecord> records = {
      Record(1, kRow1En, kRow1Cs), Record(2, kRow2En, kRow2Cs),
      Record(3, kRow3En, kRow3En)};
  const FilterResult a = FilterCorpus(records);
  std::reverse(records.begin(), records.end());
  const FilterResult b = FilterCorpus(records);
  EXPECT_EQ(a.report.rejected_by_rule, b.report.rejected_by_rule);
  EXPECT_EQ(a.report.accepted, b.report.accepted);
}

TEST(ThroughputReportTest, PercentRendering) {
  EXPECT_EQ(FormatPercent(0.82), "82.0%");
  EXPECT_EQ(FormatPercent(0.473), "47.3%");
  EXPECT_EQ(FormatPercent(1.0), "100.0%");
  EXPECT_EQ(FormatPercent(0.0), "0.0%");
  ThroughputReport report;
  report.total = 100;
  report.accepted = 82;
  report.rejected_by_rule[V::kUnbalancedBrackets] = 18;
  report.throughput = 0.82;
  const nlohmann::json j = ToJson(report);
  EXPECT_EQ(j["throughput_percent"], "82.0%");
  EXPECT_EQ(j["rejected"], 18);
  EXPECT_NE(RenderThroughputTable(report).find("82.0%"), std::string::npos);
}

}  // namespace
}  // namespace csaug
