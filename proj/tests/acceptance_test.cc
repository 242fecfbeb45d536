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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "csaug/aligner.h"
#include "csaug/corpus_io.h"
#include "csaug/corpus_stats.h"
#include "csaug/evaluation.h"
#include "csaug/gen_client.h"
#include "csaug/marker.h"
#include "csaug/pipeline.h"
#include "csaug/span_filter.h"
#include "csaug/top_tree.h"
#include "testing/random_top.h"

namespace csaug {
namespace {

namespace fs = std::filesystem;

// Pinned budgets, in seconds.
constexpr double kFilterFixtureBudget = 1.0;
constexpr double kRoundTripBudget = 5.0;
constexpr double kTotalityBudget = 30.0;
constexpr double kDeterminismBudget = 60.0;
constexpr double kScaleBudget = 300.0;
// Peak resident growth allowed while streaming the scale corpus.
constexpr long kScaleMemoryBudgetKb = 64 * 1024;

constexpr int kRoundTripTrees = 1000;
constexpr int kMarkerUtterances = 1000;
constexpr int kTotalityPairs = 10000;
constexpr int kDeterminismUtterances = 200;
constexpr int kScaleRows = 180000;

// Collects failure messages for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string Describe() const {
    std::string out;
    for (const std::string& f : failures_) absl::StrAppend(&out, "; ", f);
    if (count_ > static_cast<int>(failures_.size())) {
      absl::StrAppend(&out, "; ... ", count_, " failures in total");
    }
    return out;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void ExpectWithin(Check& check, const Timer& timer, double budget) {
  const double s = timer.Seconds();
  check.Expect(s < budget, absl::StrCat("took ", s, " s, budget ", budget, " s"));
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::pair<NodeKind, std::string>> LabelMultiset(
    const ParseTree& tree) {
  std::vector<std::pair<NodeKind, std::string>> out;
  for (const NodeSpan& s : LeafNodes(tree)) out.push_back({s.kind, s.label});
  std::sort(out.begin(), out.end());
  return out;
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "csaug_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteRandomCorpus(const fs::path& path, int rows, uint64_t seed) {
  testing::RandomTopGenerator gen(seed);
  std::ofstream out(path, std::ios::binary);
  out << kCorpusHeader << "\n";
  for (int i = 0; i < rows; ++i) {
    const testing::RandomUtterance r = gen.Next();
    out << r.utterance.domain << "\t" << r.utterance.text << "\t"
        << r.serialized << "\n";
  }
}

// 1. The four error taxonomy rows classify to their stated categories.
Check FilterFixtures() {
  Check check;
  Timer timer;
  struct Row {
    const char* en;
    const char* cs;
    Violation category;
  };
  const Row rows[] = {
      {"[ 9 pm ]_1 [ appointment for photos ]_2 and remind [ me ]_3 "
       "[ an hour before ]_4",
       "[ mujhe ]_3 [ 9 pm ]_1 ko [ photos ke liye appointment ]_2 hai aur "
       "[ mujhe ]_3 [ ek ghante pehle ]_4 yaad dilaayen",
       Violation::kUnequalSpanCount},
      {"play [ song ]_1 [ Heart is on fire ]_2 on [ spotify ]_3",
       "[ spotify ]_3 par [ song ]_1 [ Heart is on fire ]_two ko bajao",
       Violation::kMalformedSpanId},
      {"Change [ banking ]_1 reminders [ from ]_2 [ once a week ]_3 [ to ]_4 "
       "[ twice a week ]_5",
       "[ banking ]_1 reminders ko [ [ ek bar har week ]_3 [ dohrayen ]_4",
       Violation::kUnbalancedBrackets},
      {"Remind [ me ]_1 to [ email ]_2 [ Michelle ]_3 [ on Tuesday ]_4 "
       "[ about ]_5 [ the recital ]_6",
       "[ Mujhe ]_1 [ Tuesday ko ]_7 [ Michelle ]_3 ko [ email ]_2 karne ke "
       "liye yaad dilaayen",
       Violation::kMismatchedSpanIds},
  };
  std::vector<GenerationRecord> records;
  int id = 0;
  for (const Row& row : rows) {
    const ValidationVerdict v = ValidatePair(row.en, row.cs);
    check.Expect(!v.pass() && v.violations.front() == row.category,
                 absl::StrCat("row ", id + 1, " misclassified"));
    records.push_back({{absl::StrCat(++id), "d", row.en}, row.cs, "", ""});
  }
  const FilterResult result = FilterCorpus(records);
  check.Expect(result.accepted.empty(), "a fixture row was accepted");
  for (const Row& row : rows) {
    check.Expect(result.report.rejected_by_rule.at(row.category) == 1,
                 absl::StrCat(ViolationName(row.category), " count != 1"));
  }
  ExpectWithin(check, timer, kFilterFixtureBudget);
  return check;
}

// 2. Parsing the serialization of a random tree gives the same tree.
Check RoundTrip() {
  Check check;
  Timer timer;
  testing::RandomTopGenerator gen(2001);
  for (int i = 0; i < kRoundTripTrees; ++i) {
    const testing::RandomUtterance r = gen.Next();
    const ParseTree& tree = *r.utterance.parse;
    const std::string text = Serialize(tree);
    absl::StatusOr<ParseTree> back = ParseTop(text);
    check.Expect(text == r.serialized, "serialization differs from oracle");
    check.Expect(back.ok() && *back == tree, "round trip failed: " + text);
  }
  ExpectWithin(check, timer, kRoundTripBudget);
  return check;
}

// 3. Stripping marks restores the tokens; ids are 1..n in pre-order.
Check MarkerIdentity() {
  Check check;
  testing::RandomTopGenerator gen(2002);
  for (int i = 0; i < kMarkerUtterances; ++i) {
    const testing::RandomUtterance r = gen.Next();
    absl::StatusOr<MarkedUtterance> m = MarkUtterance(r.utterance);
    if (!m.ok()) {
      check.Expect(false, std::string(m.status().message()));
      continue;
    }
    absl::StatusOr<std::string> stripped = StripMarks(m->Text());
    check.Expect(stripped.ok() && Tokenize(*stripped) == r.tokens,
                 "strip(mark(u)) != u for " + r.utterance.text);
    check.Expect(m->Text() == r.marked, "marked text differs from oracle");
    // Ids in order of their opening brackets.
    std::vector<int> open_ids, stack;
    std::vector<std::string> tokens = Tokenize(m->Text());
    for (size_t k = 0; k < tokens.size(); ++k) {
      if (tokens[k] == "[") {
        stack.push_back(static_cast<int>(open_ids.size()));
        open_ids.push_back(0);
      } else if (const int id = ParseCloseToken(tokens[k]); id > 0) {
        open_ids[stack.back()] = id;
        stack.pop_back();
      }
    }
    for (size_t k = 0; k < open_ids.size(); ++k) {
      check.Expect(open_ids[k] == static_cast<int>(k) + 1,
                   "ids not consecutive in pre-order: " + m->Text());
    }
    check.Expect(m->span_map.size() == r.spans.size(), "span map size");
  }
  return check;
}

// Maps every oracle vocabulary word to a distinct romanized Hindi-like token.
SubstitutionTable TotalitySubstitutions() {
  return {{"set", "lagao"},   {"me", "mujhe"},     {"an", "ek"},
          {"alarm", "alaarm"}, {"for", "ke_liye"}, {"on", "par"},
          {"weather", "mausam"}, {"in", "mein"},   {"the", "woh"},
          {"traffic", "traafik"}, {"to", "ko"},    {"remind", "yaad"},
          {"message", "sandesh"}, {"song", "gaana"}, {"tonight", "aaj_raat"}};
}

// 4. Faithful mock pairs always pass the filter and always align.
Check FilterAlignmentTotality() {
  Check check;
  Timer timer;
  testing::RandomTopGenerator gen(2004);
  const SubstitutionTable table = TotalitySubstitutions();
  for (int i = 0; i < kTotalityPairs; ++i) {
    const Utterance u = gen.Next().utterance;
    const MarkedUtterance m = MarkTree(*u.parse);
    const GenerationRecord record = MockGenerate(
        {absl::StrCat(i + 1), u.domain, m.Text()}, table, MockMode::kFaithful);
    const ValidationVerdict verdict = ValidatePair(m, record.candidate);
    check.Expect(verdict.pass(), "filter rejected " + record.candidate);
    if (!verdict.pass()) continue;
    absl::StatusOr<ParseTree> tree = ReconstructParse(m, record.candidate);
    check.Expect(tree.ok(), "alignment failed for " + record.candidate);
    if (!tree.ok()) continue;
    check.Expect(LabelMultiset(*tree) == LabelMultiset(*u.parse) &&
                     tree->root.label == u.parse->root.label,
                 "labels not preserved for " + record.candidate);
  }
  ExpectWithin(check, timer, kTotalityBudget);
  return check;
}

// 5. The alarm row with swapped slots.
Check AlignmentFixture() {
  Check check;
  Utterance en;
  en.domain = "alarm";
  en.text = "Set me an alarm every Thursday at 5AM until the 1st July";
  en.parse = *ParseTop(
      "[IN:CREATE_ALARM Set me an alarm [SL:DATE_TIME_RECURRING every "
      "Thursday at 5AM ] [SL:DATE_TIME until the 1st July ] ]");
  const MarkedUtterance m = *MarkUtterance(en);
  check.Expect(m.Text() ==
                   "Set me an alarm [ every Thursday at 5AM ]_1 [ until the "
                   "1st July ]_2",
               "unexpected marking " + m.Text());
  const std::string cs =
      "Muje [ 1 july tak ]_2 ke liye [ har thursday ko subah 5 baje ]_1 ka "
      "alarm set kare";
  auto tokens = [](std::initializer_list<const char*> words) {
    std::vector<ParseNode> out;
    for (const char* w : words) out.push_back(ParseNode::Token(w));
    return out;
  };
  std::vector<ParseNode> kids = tokens({"Muje"});
  kids.push_back(ParseNode::Slot("DATE_TIME", tokens({"1", "july", "tak"})));
  for (ParseNode& t : tokens({"ke", "liye"})) kids.push_back(t);
  kids.push_back(ParseNode::Slot(
      "DATE_TIME_RECURRING",
      tokens({"har", "thursday", "ko", "subah", "5", "baje"})));
  for (ParseNode& t : tokens({"ka", "alarm", "set", "kare"})) {
    kids.push_back(t);
  }
  const ParseTree expected{ParseNode::Intent("CREATE_ALARM", kids)};
  check.Expect(ValidatePair(m, cs).pass(), "fixture rejected by filter");
  absl::StatusOr<ParseTree> got = ReconstructParse(m, cs);
  check.Expect(got.ok() && *got == expected,
               got.ok() ? "tree mismatch: " + Serialize(*got)
                        : std::string(got.status().message()));
  return check;
}

// 6. 82 faithful and 18 corrupted records give 82.0% throughput.
Check ThroughputArithmetic() {
  Check check;
  testing::RandomTopGenerator gen(2006);
  const MockMode corrupt[] = {MockMode::kCorruptR1, MockMode::kCorruptR2,
                              MockMode::kCorruptR3, MockMode::kCorruptR4};
  std::vector<GenerationRecord> records;
  for (int i = 0; i < 100; ++i) {
    const Utterance u = gen.Next().utterance;
    const MockMode mode = i < 82 ? MockMode::kFaithful : corrupt[i % 4];
    records.push_back(MockGenerate(
        {absl::StrCat(i + 1), u.domain, MarkTree(*u.parse).Text()}, {}, mode));
  }
  const FilterResult result = FilterCorpus(records);
  int rejected = 0;
  for (const auto& [rule, n] : result.report.rejected_by_rule) rejected += n;
  check.Expect(result.report.throughput == 0.820,
               absl::StrCat("throughput ", result.report.throughput));
  check.Expect(FormatPercent(result.report.throughput) == "82.0%",
               "rendered " + FormatPercent(result.report.throughput));
  check.Expect(rejected == 18, absl::StrCat("rejected_by_rule sums to ", rejected));
  check.Expect(result.report.total == 100 && result.report.accepted == 82,
               "accepted/total mismatch");
  return check;
}

// 7. Toy corpus statistics against a hand computation.
Check Statistics() {
  Check check;
  auto tagger = LexiconTagger::Create(
      MakeLexicon({"set", "alarm", "weather", "for", "tomorrow"}),
      MakeLexicon({"kal", "ka", "mausam", "kaisa", "hai"}));
  if (!tagger.ok()) {
    check.Expect(false, std::string(tagger.status().message()));
    return check;
  }
  // Per utterance (A tokens, B tokens, CS points):
  //   (3, 1, 1) (0, 5, 0) (2, 2, 2) (2, 0, 0) (3, 3, 3)
  const std::vector<std::string> corpus = {
      "set alarm for kal",
      "kal ka mausam kaisa hai",
      "weather kaisa hai tomorrow",
      "Alarm 5 baje set kar",
      "kal ka alarm , tomorrow ka weather",
  };
  absl::StatusOr<CorpusStats> stats = ComputeCorpusStats(corpus, **tagger);
  if (!stats.ok()) {
    check.Expect(false, std::string(stats.status().message()));
    return check;
  }
  check.Expect(stats->vocab_a == 5, absl::StrCat("vocab_a ", stats->vocab_a));
  check.Expect(stats->vocab_b == 5, absl::StrCat("vocab_b ", stats->vocab_b));
  check.Expect(stats->total_utterances == 5, "total_utterances");
  check.Expect(stats->avg_tokens_a == 2.0,
               absl::StrCat("avg_tokens_a ", stats->avg_tokens_a));
  check.Expect(stats->avg_tokens_b == 2.2,
               absl::StrCat("avg_tokens_b ", stats->avg_tokens_b));
  check.Expect(stats->avg_cs_points == 1.2,
               absl::StrCat("avg_cs_points ", stats->avg_cs_points));
  return check;
}

// 8. 20 records, 5 misses across 3 domains.
Check Evaluation() {
  Check check;
  // (domain, records, misses): alarm 8/2, weather 6/1, music 6/2.
  const std::vector<std::tuple<std::string, int, int>> plan = {
      {"alarm", 8, 2}, {"weather", 6, 1}, {"music", 6, 2}};
  std::vector<TsvRow> gold, pred;
  int line = 0;
  for (const auto& [domain, n, misses] : plan) {
    for (int i = 0; i < n; ++i) {
      const std::string text = absl::StrCat("utt ", domain, " ", i);
      const std::string parse =
          absl::StrCat("[IN:Q utt [SL:S ", domain, " ] ", i, " ]");
      ++line;
      gold.push_back({line, {domain, text, parse}});
      const std::string wrong =
          absl::StrCat("[IN:Q utt [SL:X ", domain, " ] ", i, " ]");
      pred.push_back({line, {domain, text, i < misses ? wrong : parse}});
    }
  }
  absl::StatusOr<EvalReport> report = Evaluate(pred, gold);
  if (!report.ok()) {
    check.Expect(false, std::string(report.status().message()));
    return check;
  }
  check.Expect(report->overall_em == 0.75,
               absl::StrCat("overall ", report->overall_em));
  const std::map<std::string, double> expected = {
      {"alarm", 6.0 / 8}, {"weather", 5.0 / 6}, {"music", 4.0 / 6}};
  check.Expect(report->per_domain_em == expected, "per-domain ratios differ");
  return check;
}

// 9. Two augment runs with the same seed produce identical outputs.
Check Determinism() {
  Check check;
  Timer timer;
  const fs::path dir = ScratchDir("determinism");
  WriteRandomCorpus(dir / "corpus.tsv", kDeterminismUtterances, 2009);
  std::ofstream(dir / "corpus.tsv", std::ios::app)
      << "alarm\tbroken row\t[IN:A broken row\n";
  std::ofstream(dir / "a.txt") << "set\nalarm\nweather\nthe\nto\n";
  std::ofstream(dir / "b.txt") << "kal\nsubah\nko\nhai\nmausam\n";
  PipelineConfig config;
  config.corpus_path = (dir / "corpus.tsv").string();
  config.lexicon_a = (dir / "a.txt").string();
  config.lexicon_b = (dir / "b.txt").string();
  config.rng_seed = 99;
  config.backend.mock_corrupt_mode = "corrupt-R2";
  config.backend.mock_corrupt_rate = 0.2;
  std::vector<AugmentSummary> summaries;
  for (const char* run : {"run1", "run2"}) {
    config.output_dir = (dir / run).string();
    absl::StatusOr<AugmentSummary> s = RunAugment(config);
    if (!s.ok()) {
      check.Expect(false, std::string(s.status().message()));
      return check;
    }
    summaries.push_back(*s);
  }
  for (const fs::directory_entry& e : fs::directory_iterator(dir / "run1")) {
    const fs::path other = dir / "run2" / e.path().filename();
    check.Expect(fs::exists(other) && Slurp(e.path()) == Slurp(other),
                 e.path().filename().string() + " differs between runs");
  }
  for (const char* f : {kAugmentedFile, kFilterRejectsFile, kThroughputJson,
                        kSummaryJson, kStatsJson, kIngestRejectsFile}) {
    check.Expect(fs::exists(dir / "run1" / f), std::string(f) + " missing");
  }
  const AugmentSummary& s = summaries[0];
  check.Expect(s.Conserved(), "inputs not fully partitioned");
  check.Expect(s.inputs == kDeterminismUtterances && s.ingest_rejects == 1,
               "unexpected input count");
  check.Expect(s.filter_rejects > 0 && s.aligned > 0,
               "corruption rate produced a degenerate split");
  ExpectWithin(check, timer, kDeterminismBudget);
  return check;
}

long PeakRssKb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stol(line.substr(6));
  }
  return -1;
}

// 10. Streaming ingest of a TOPv2-scale corpus.
Check ScaleSmoke() {
  Check check;
  const fs::path dir = ScratchDir("scale");
  const fs::path path = dir / "big.tsv";
  WriteRandomCorpus(path, kScaleRows, 2010);
  Timer timer;
  // Line-count oracle: data lines are all lines after the header.
  long oracle = -1;
  {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) ++oracle;
  }
  const long rss_before = PeakRssKb();
  long rows = 0, rejects = 0;
  const absl::Status status = ForEachUtterance(
      path.string(), IngestOptions{},
      [&rows](int64_t, Utterance) { ++rows; },
      [&rejects](IngestReject) { ++rejects; });
  const long rss_after = PeakRssKb();
  check.Expect(status.ok(), std::string(status.message()));
  check.Expect(rows == oracle && oracle == kScaleRows,
               absl::StrCat("streamed ", rows, " rows, oracle ", oracle));
  check.Expect(rejects == 0, absl::StrCat(rejects, " rejects"));
  check.Expect(rss_before > 0 && rss_after - rss_before < kScaleMemoryBudgetKb,
               absl::StrCat("peak RSS grew by ", rss_after - rss_before, " kB"));
  ExpectWithin(check, timer, kScaleBudget);
  fs::remove_all(dir);
  return check;
}

int Run() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"filter fixtures classify to their categories", FilterFixtures},
      {"parse/serialize round trip on random trees", RoundTrip},
      {"marker identity and pre-order span ids", MarkerIdentity},
      {"faithful pairs always filter and align", FilterAlignmentTotality},
      {"alarm alignment fixture", AlignmentFixture},
      {"throughput arithmetic 82/100", ThroughputArithmetic},
      {"toy corpus statistics", Statistics},
      {"evaluation 20 records 3 domains", Evaluation},
      {"augment determinism and conservation", Determinism},
      {"streaming ingest at scale", ScaleSmoke},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Timer timer;
    const Check check = criteria[i].second();
    std::printf("criterion %2zu %s  %s (%.2f s)%s\n", i + 1,
                check.ok() ? "PASS" : "FAIL", criteria[i].first.c_str(),
                timer.Seconds(), check.Describe().c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace csaug

int main() { return csaug::Run(); }
