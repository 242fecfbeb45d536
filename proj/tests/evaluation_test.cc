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

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "csaug/errors.h"
#include "gtest/gtest.h"
#include "testing/random_top.h"

namespace csaug {
namespace {

TsvRow Row(const std::string& domain, const std::string& text,
           const std::string& parse) {
  static int64_t line = 0;
  return {++line, {domain, text, parse}};
}

TEST(EvaluateTest, IdentityIsPerfect) {
  testing::RandomTopGenerator gen(21);
  std::vector<TsvRow> gold;
  for (int i = 0; i < 100; ++i) {
    const testing::RandomUtterance r = gen.Next();
    gold.push_back(Row(r.utterance.domain, r.utterance.text, r.serialized));
  }
  absl::StatusOr<EvalReport> report = Evaluate(gold, gold);
  ASSERT_TRUE(report.ok());
  EXPECT_DOUBLE_EQ(report->overall_em, 1.0);
  EXPECT_EQ(report->overall, (MatchCount{100, 100}));
  for (const auto& [domain, em] : report->per_domain_em) {
    EXPECT_DOUBLE_EQ(em, 1.0) << domain;
  }
}

TEST(EvaluateTest, OneFlippedLabel) {
  const std::vector<TsvRow> gold = {
      Row("alarm", "x y", "[IN:A x [SL:B y ] ]"),
      Row("alarm", "p q", "[IN:A p [SL:B q ] ]")};
  std::vector<TsvRow> pred = gold;
  pred[1].columns[2] = "[IN:A p [SL:C q ] ]";
  const EvalReport report = *Evaluate(pred, gold);
  EXPECT_DOUBLE_EQ(report.overall_em, 0.5);
  EXPECT_EQ(report.counts.at("alarm"), (MatchCount{1, 2}));
}

TEST(EvaluateTest, PerDomainBreakdown) {
  const std::vector<TsvRow> gold = {
      Row("alarm", "a", "[IN:A a ]"), Row("alarm", "b", "[IN:A b ]"),
      Row("music", "c", "[IN:M c ]"), Row("music", "d", "[IN:M d ]")};
  std::vector<TsvRow> pred = gold;
  pred[2].columns[2] = "[IN:X c ]";
  pred[3].columns[2] = "[IN:X d ]";
  const EvalReport report = *Evaluate(pred, gold);
  EXPECT_DOUBLE_EQ(report.overall_em, 0.5);
  EXPECT_DOUBLE_EQ(report.per_domain_em.at("alarm"), 1.0);
  EXPECT_DOUBLE_EQ(report.per_domain_em.at("music"), 0.0);
  const nlohmann::json j = ToJson(report);
  EXPECT_EQ(j["per_domain"]["music"]["total"], 2);
  const std::string table = RenderEvalTable(report);
  EXPECT_NE(table.find("50.0%"), std::string::npos);
  EXPECT_NE(table.find("100.0%"), std::string::npos);
}

TEST(EvaluateTest, Errors) {
  const std::vector<TsvRow> gold = {Row("alarm", "a b", "[IN:A a b ]")};
  EXPECT_TRUE(HasErrorCode(Evaluate({}, gold).status(), ErrorCode::kKeyMismatch));
  EXPECT_TRUE(HasErrorCode(
      Evaluate({Row("alarm", "a c", "[IN:A a c ]")}, gold).status(),
      ErrorCode::kKeyMismatch));
  EXPECT_TRUE(HasErrorCode(
      Evaluate(gold, {Row("alarm", "a b", "[IN:A a b")}).status(),
      ErrorCode::kUnparseableGold));
}

TEST(EvaluateTest, UnparseablePredictionIsAMiss) {
  const std::vector<TsvRow> gold = {Row("alarm", "a", "[IN:A a ]"),
                                    Row("alarm", "b", "[IN:A b ]")};
  std::vector<TsvRow> pred = gold;
  pred[0].columns[2] = "[IN:A a";
  const EvalReport report = *Evaluate(pred, gold);
  EXPECT_EQ(report.unparseable_predictions, 1);
  EXPECT_EQ(report.overall, (MatchCount{1, 2}));
}

TEST(EvaluateTest, WhitespaceInsensitiveKeysAndParses) {
  const std::vector<TsvRow> gold = {Row("d", "a  b", "[IN:A a [SL:B b ] ]")};
  const std::vector<TsvRow> pred = {Row("d", "a b", "[IN:a  a [SL:b b ]  ]")};
  EXPECT_DOUBLE_EQ(Evaluate(pred, gold)->overall_em, 1.0);
}

TEST(EvaluateTest, OverallIsCountWeightedMeanOfDomains) {
  std::mt19937_64 rng(22);
  testing::RandomTopGenerator gen(22, /*max_depth=*/2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TsvRow> gold, pred;
    for (int i = 0; i < 5 + trial; ++i) {
      const testing::RandomUtterance r = gen.Next();
      gold.push_back(Row(r.utterance.domain, r.utterance.text, r.serialized));
      pred.push_back(gold.back());
      if (rng() % 3 == 0) {
        pred.back().columns[2] = "[IN:WRONG " + r.utterance.text + " ]";
      }
    }
    const EvalReport report = *Evaluate(pred, gold);
    double weighted = 0;
    int total = 0;
    for (const auto& [domain, c] : report.counts) {
      weighted += report.per_domain_em.at(domain) * c.total;
      total += c.total;
      ASSERT_GE(report.per_domain_em.at(domain), 0.0);
      ASSERT_LE(report.per_domain_em.at(domain), 1.0);
    }
    ASSERT_EQ(total, static_cast<int>(gold.size()));
    ASSERT_NEAR(report.overall_em, weighted / total, 1e-12);
  }
}

TEST(EvaluateFilesTest, ReadsTsv) {
  const std::string dir = ::testing::TempDir();
  const std::string body =
      "domain\tutterance\tsemantic_parse\nd\ta\t[IN:A a ]\nd\tb\t[IN:A b ]\n";
  std::ofstream(dir + "/gold.tsv") << body;
  std::ofstream(dir + "/pred.tsv")
      << "domain\tutterance\tsemantic_parse\nd\ta\t[IN:A a ]\nd\tb\t[IN:B b ]\n";
  absl::StatusOr<EvalReport> r =
      EvaluateFiles(dir + "/pred.tsv", dir + "/gold.tsv", true);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_DOUBLE_EQ(r->overall_em, 0.5);
  EXPECT_TRUE(HasErrorCode(
      EvaluateFiles(dir + "/missing.tsv", dir + "/gold.tsv", true).status(),
      ErrorCode::kFileUnreadable));
}

}  // namespace
}  // namespace csaug
