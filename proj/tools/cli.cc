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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "csaug/aligner.h"
#include "csaug/corpus_io.h"
#include "csaug/corpus_stats.h"
#include "csaug/errors.h"
#include "csaug/evaluation.h"
#include "csaug/file_util.h"
#include "csaug/gen_client.h"
#include "csaug/generation.h"
#include "csaug/marker.h"
#include "csaug/pipeline.h"
#include "csaug/span_filter.h"
#include "csaug/status_macros.h"
#include "json.hpp"

namespace csaug {
namespace {

using Row = std::pair<std::string, std::string>;

std::string RenderKv(absl::string_view title, const std::vector<Row>& rows) {
  size_t width = 0;
  for (const Row& r : rows) width = std::max(width, r.first.size());
  std::string out = absl::StrCat(title, "\n");
  for (const Row& r : rows) {
    absl::StrAppendFormat(&out, "  %-*s  %s\n", static_cast<int>(width),
                          r.first, r.second);
  }
  return out;
}

// Where reports go. Tables by default, JSON with --json; --report <prefix>
// additionally writes <prefix>.json and <prefix>.txt.
struct Reporter {
  bool json = false;
  std::string prefix;
  std::ostream* out = nullptr;

  absl::Status Emit(const nlohmann::json& j, const std::string& table) const {
    if (!prefix.empty()) {
      RETURN_IF_ERROR(WriteFile(prefix + ".json", j.dump(2) + "\n"));
      RETURN_IF_ERROR(WriteFile(prefix + ".txt", table));
    }
    *out << (json ? j.dump(2) + "\n" : table);
    return absl::OkStatus();
  }
};

absl::Status WriteLines(const std::string& path,
                        const std::vector<nlohmann::json>& lines) {
  if (path.empty()) return absl::OkStatus();
  return WriteFile(path, ToJsonLines(lines));
}

absl::StatusOr<std::vector<GenerationRecord>> ReadRecords(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  ASSIGN_OR_RETURN(std::vector<nlohmann::json> lines, ParseJsonLines(text));
  std::vector<GenerationRecord> out;
  out.reserve(lines.size());
  for (const nlohmann::json& j : lines) {
    ASSIGN_OR_RETURN(GenerationRecord r, RecordFromJson(j));
    out.push_back(std::move(r));
  }
  return out;
}

struct BackendFlags {
  std::string kind, url, replay_file, mock_mode, mock_table;
  std::optional<int> batch_size, retries, max_in_flight;
  std::optional<double> timeout_s;

  void Register(CLI::App* app) {
    app->add_option("--backend", kind, "mock | replay | http");
    app->add_option("--url", url, "HTTP backend base URL");
    app->add_option("--replay-file", replay_file, "Replay JSONL file");
    app->add_option("--mock-mode", mock_mode,
                    "faithful | corrupt-R1 .. corrupt-R4");
    app->add_option("--mock-table", mock_table, "Token substitution TSV");
    app->add_option("--batch-size", batch_size);
    app->add_option("--timeout-s", timeout_s);
    app->add_option("--retries", retries);
    app->add_option("--max-in-flight", max_in_flight);
  }

  void Apply(BackendConfig& b) const {
    if (!kind.empty()) b.kind = kind;
    if (!url.empty()) b.url = url;
    if (!replay_file.empty()) b.replay_file = replay_file;
    if (!mock_mode.empty()) b.mock_mode = mock_mode;
    if (!mock_table.empty()) b.mock_table = mock_table;
    if (batch_size) b.batch_size = *batch_size;
    if (timeout_s) b.timeout_s = *timeout_s;
    if (retries) b.retries = *retries;
    if (max_in_flight) b.max_in_flight = *max_in_flight;
  }
};

absl::Status CmdIngest(const PipelineConfig& cfg, const std::string& input,
                       const std::string& out_path,
                       const std::string& rejects_path, const Reporter& rep) {
  std::string tsv;
  if (!out_path.empty() && cfg.ingest.header) {
    absl::StrAppend(&tsv, kCorpusHeader, "\n");
  }
  int64_t utterances = 0;
  std::vector<nlohmann::json> rejects;
  RETURN_IF_ERROR(ForEachUtterance(
      input, cfg.ingest,
      [&](int64_t, Utterance u) {
        ++utterances;
        if (!out_path.empty()) {
          absl::StrAppend(&tsv, UtteranceToTsvLine(u), "\n");
        }
      },
      [&](IngestReject r) { rejects.push_back(ToJson(r)); }));
  if (!out_path.empty()) RETURN_IF_ERROR(WriteFile(out_path, tsv));
  RETURN_IF_ERROR(WriteLines(rejects_path, rejects));
  nlohmann::json j = {{"input", input},
                      {"utterances", utterances},
                      {"rejects", rejects.size()},
                      {"dedup", cfg.ingest.dedup}};
  std::vector<Row> rows = {{"input", input},
                           {"utterances", absl::StrCat(utterances)},
                           {"rejects", absl::StrCat(rejects.size())}};
  for (const nlohmann::json& r : rejects) {
    rows.push_back({absl::StrCat("  line ", r["line"].get<int64_t>()),
                    r["message"].get<std::string>()});
  }
  return rep.Emit(j, RenderKv("Ingest", rows));
}

absl::Status CmdMark(const PipelineConfig& cfg, const std::string& input,
                     const std::string& out_path, const Reporter& rep) {
  ASSIGN_OR_RETURN(IngestResult corpus, Ingest(input, cfg.ingest));
  const std::vector<GenerationRequest> requests =
      MakeRequests(corpus.utterances);
  std::vector<nlohmann::json> lines;
  size_t spans = 0;
  for (const GenerationRequest& r : requests) lines.push_back(ToJson(r));
  for (const Utterance& u : corpus.utterances) {
    spans += LeafNodes(*u.parse).size();
  }
  RETURN_IF_ERROR(WriteLines(out_path, lines));
  nlohmann::json j = {{"requests", requests.size()},
                      {"spans", spans},
                      {"ingest_rejects", corpus.rejects.size()}};
  return rep.Emit(j, RenderKv("Mark", {{"requests", absl::StrCat(requests.size())},
                                       {"spans", absl::StrCat(spans)},
                                       {"ingest rejects",
                                        absl::StrCat(corpus.rejects.size())}}));
}

absl::Status CmdExportSeed(const PipelineConfig& cfg, const std::string& input,
                           size_t size, const std::string& out_path,
                           const Reporter& rep) {
  ASSIGN_OR_RETURN(std::vector<AnnotatedPair> pairs,
                   ReadAnnotatedPairs(input, cfg.ingest));
  ASSIGN_OR_RETURN(std::vector<SeedPair> seed,
                   ExportSeedPairs(pairs, size, cfg.rng_seed));
  std::string tsv;
  if (cfg.ingest.header) tsv = "marked_english\tmarked_cs\tdomain\n";
  tsv += SeedPairsToTsv(seed);
  RETURN_IF_ERROR(WriteFile(out_path, tsv));
  std::map<std::string, int> per_domain;
  for (const SeedPair& p : seed) ++per_domain[p.domain];
  nlohmann::json j = {{"pairs", seed.size()},
                      {"corpus", pairs.size()},
                      {"rng_seed", cfg.rng_seed},
                      {"per_domain", per_domain}};
  std::vector<Row> rows = {{"pairs", absl::StrCat(seed.size())},
                           {"corpus", absl::StrCat(pairs.size())},
                           {"rng seed", absl::StrCat(cfg.rng_seed)}};
  for (const auto& [d, n] : per_domain) rows.push_back({"  " + d, absl::StrCat(n)});
  return rep.Emit(j, RenderKv("Seed export", rows));
}

absl::Status CmdGenerate(const PipelineConfig& cfg, const std::string& input,
                         const std::string& out_path, const Reporter& rep) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(input));
  ASSIGN_OR_RETURN(std::vector<nlohmann::json> lines, ParseJsonLines(text));
  std::vector<GenerationRequest> requests;
  for (const nlohmann::json& j : lines) {
    ASSIGN_OR_RETURN(GenerationRequest r, RequestFromJson(j));
    requests.push_back(std::move(r));
  }
  ASSIGN_OR_RETURN(auto backend, MakeBackend(cfg.backend, cfg.rng_seed));
  // Records stream to disk so a failing run leaves its completed prefix.
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorCode::kFileUnreadable,
                     absl::StrCat("cannot write ", out_path));
  }
  int delivered = 0;
  int failures = 0;
  auto sink = [&](const GenerationRecord& r) {
    out << ToJsonLines({ToJson(r)});
    ++delivered;
    if (!r.ok()) ++failures;
  };
  absl::StatusOr<std::vector<GenerationRecord>> records = GenerateBatch(
      requests, *backend, GatewayOptionsFrom(cfg.backend), sink);
  out.close();
  RETURN_IF_ERROR(records.status());
  nlohmann::json j = {{"requests", requests.size()},
                      {"records", delivered},
                      {"failures", failures},
                      {"backend", cfg.backend.kind}};
  return rep.Emit(j, RenderKv("Generate",
                              {{"requests", absl::StrCat(requests.size())},
                               {"records", absl::StrCat(delivered)},
                               {"failures", absl::StrCat(failures)},
                               {"backend", cfg.backend.kind}}));
}

absl::Status CmdFilter(const PipelineConfig& cfg, const std::string& input,
                       const std::string& accepted_path,
                       const std::string& rejects_path, const Reporter& rep) {
  ASSIGN_OR_RETURN(std::vector<GenerationRecord> all, ReadRecords(input));
  std::vector<GenerationRecord> records;
  int failures = 0;
  for (GenerationRecord& r : all) {
    if (r.ok()) {
      records.push_back(std::move(r));
    } else {
      ++failures;
    }
  }
  FilterOptions options;
  options.check_containment = cfg.strict_containment;
  const FilterResult result = FilterCorpus(records, options);
  std::vector<nlohmann::json> accepted, rejected;
  for (const GenerationRecord& r : result.accepted) accepted.push_back(ToJson(r));
  for (const RejectedRecord& r : result.rejected) rejected.push_back(ToJson(r));
  RETURN_IF_ERROR(WriteLines(accepted_path, accepted));
  RETURN_IF_ERROR(WriteLines(rejects_path, rejected));
  nlohmann::json j = ToJson(result.report);
  j["skipped_generation_failures"] = failures;
  std::string table = RenderThroughputTable(result.report);
  if (failures > 0) {
    absl::StrAppend(&table, "  (", failures,
                    " generation failure(s) skipped)\n");
  }
  return rep.Emit(j, table);
}

absl::Status CmdAlign(const PipelineConfig& cfg, const std::string& input,
                      const std::string& corpus_path,
                      const std::string& out_path,
                      const std::string& rejects_path, const Reporter& rep) {
  ASSIGN_OR_RETURN(std::vector<GenerationRecord> records, ReadRecords(input));
  ASSIGN_OR_RETURN(IngestResult corpus, Ingest(corpus_path, cfg.ingest));
  std::vector<AlignInput> inputs;
  for (GenerationRecord& r : records) {
    size_t ordinal = 0;
    if (!absl::SimpleAtoi(r.request.id, &ordinal) || ordinal == 0 ||
        ordinal > corpus.utterances.size()) {
      return MakeError(ErrorCode::kKeyMismatch,
                       absl::StrCat("record id '", r.request.id,
                                    "' is not an ordinal of ", corpus_path));
    }
    inputs.push_back({std::move(r), corpus.utterances[ordinal - 1]});
  }
  const AlignmentResult result = AlignCorpus(inputs);
  std::string tsv;
  if (cfg.ingest.header) absl::StrAppend(&tsv, kCorpusHeader, "\n");
  tsv += AlignedToTsv(result.aligned);
  RETURN_IF_ERROR(WriteFile(out_path, tsv));
  std::vector<nlohmann::json> rejects;
  for (const AlignReject& r : result.rejects) rejects.push_back(ToJson(r));
  RETURN_IF_ERROR(WriteLines(rejects_path, rejects));
  nlohmann::json j = {{"inputs", inputs.size()},
                      {"aligned", result.aligned.size()},
                      {"rejects", result.rejects.size()}};
  return rep.Emit(j, RenderKv("Align",
                              {{"inputs", absl::StrCat(inputs.size())},
                               {"aligned", absl::StrCat(result.aligned.size())},
                               {"rejects", absl::StrCat(result.rejects.size())}}));
}

absl::Status CmdStats(const PipelineConfig& cfg, const std::string& input,
                      const std::string& format, bool reference,
                      const Reporter& rep) {
  if (cfg.lexicon_a.empty() || cfg.lexicon_b.empty()) {
    return MakeError(ErrorCode::kMissingLexicon,
                     "both --lexicon-a and --lexicon-b are required");
  }
  ASSIGN_OR_RETURN(Lexicon a, LoadLexicon(cfg.lexicon_a));
  ASSIGN_OR_RETURN(Lexicon b, LoadLexicon(cfg.lexicon_b));
  ASSIGN_OR_RETURN(auto tagger, LexiconTagger::Create(std::move(a), std::move(b)));
  std::vector<std::string> texts;
  if (format == "lines") {
    ASSIGN_OR_RETURN(std::string text, ReadFile(input));
    for (absl::string_view line : absl::StrSplit(text, '\n')) {
      if (!Tokenize(line).empty()) texts.emplace_back(line);
    }
  } else {
    ASSIGN_OR_RETURN(TsvReader reader,
                     TsvReader::Open(input, 3, cfg.ingest.header));
    TsvRow row;
    while (true) {
      ASSIGN_OR_RETURN(bool more, reader.Next(row));
      if (!more) break;
      texts.push_back(row.columns[1]);
    }
  }
  ASSIGN_OR_RETURN(CorpusStats stats, ComputeCorpusStats(texts, *tagger));
  const CorpusStats published = HinglishTopReference();
  nlohmann::json j = ToJson(stats);
  if (reference) j["reference"] = ToJson(published);
  return rep.Emit(j, RenderStatsTable(stats, {},
                                      reference ? &published : nullptr));
}

absl::Status CmdEval(const PipelineConfig& cfg, const std::string& pred,
                     const std::string& gold, const Reporter& rep) {
  ASSIGN_OR_RETURN(EvalReport report,
                   EvaluateFiles(pred, gold, cfg.ingest.header));
  return rep.Emit(ToJson(report), RenderEvalTable(report));
}

absl::Status CmdAugment(const PipelineConfig& cfg, const Reporter& rep) {
  ASSIGN_OR_RETURN(AugmentSummary summary, RunAugment(cfg));
  const std::filesystem::path dir(cfg.output_dir);
  ASSIGN_OR_RETURN(std::string table,
                   ReadFile((dir / kSummaryTxt).string()));
  ASSIGN_OR_RETURN(std::string throughput,
                   ReadFile((dir / kThroughputTxt).string()));
  nlohmann::json j = ToJson(summary);
  j["resumed_from_checkpoint"] = summary.resumed_from_checkpoint;
  j["output_dir"] = cfg.output_dir;
  return rep.Emit(j, absl::StrCat(table, "\n", throughput));
}

absl::Status CmdSplits(const PipelineConfig& cfg, const std::string& input,
                       const std::string& out_dir, const Reporter& rep) {
  ASSIGN_OR_RETURN(IngestResult corpus, Ingest(input, cfg.ingest));
  ASSIGN_OR_RETURN(auto splits,
                   MakeSplits(corpus.utterances, cfg.seed_sizes, cfg.rng_seed));
  RETURN_IF_ERROR(
      WriteSplits(corpus.utterances, splits, out_dir, cfg.ingest.header));
  nlohmann::json sizes = nlohmann::json::object();
  std::vector<Row> rows;
  for (const auto& [size, indices] : splits) {
    std::map<std::string, int> per_domain;
    for (size_t i : indices) ++per_domain[corpus.utterances[i].domain];
    sizes[absl::StrCat(size)] = per_domain;
    std::string detail;
    for (const auto& [d, n] : per_domain) {
      absl::StrAppend(&detail, detail.empty() ? "" : " ", d, "=", n);
    }
    rows.push_back({absl::StrCat("seed_", size, ".tsv"), detail});
  }
  nlohmann::json j = {{"output_dir", out_dir},
                      {"rng_seed", cfg.rng_seed},
                      {"splits", sizes}};
  return rep.Emit(j, RenderKv("Seed splits", rows));
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  const std::optional<ErrorCode> code = GetErrorCode(status);
  if (code.has_value()) {
    switch (*code) {
      case ErrorCode::kBackendUnavailable:
      case ErrorCode::kTimeoutPerBatch:
      case ErrorCode::kProtocolError:
        return kExitBackend;
      case ErrorCode::kInvalidConfig:
        return kExitUsage;
      default:
        return kExitData;
    }
  }
  if (absl::IsUnavailable(status) || absl::IsDeadlineExceeded(status)) {
    return kExitBackend;
  }
  return kExitData;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Code-switched data augmentation for TOP semantic parsing",
               "csaug"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, split_name = "train", report_prefix;
  uint64_t rng_seed = 0;
  bool no_header = false, dedup = false, strict = true, json = false;
  std::string lexicon_a, lexicon_b;
  app.add_option("--config", config_path, "JSON pipeline config file");
  CLI::Option* seed_opt = app.add_option("--rng-seed", rng_seed, "RNG seed");
  app.add_flag("--no-header", no_header, "Input/output TSVs have no header row");
  app.add_flag("--dedup", dedup, "Drop duplicate corpus rows");
  CLI::Option* strict_opt = app.add_flag(
      "--strict-containment,!--no-strict-containment", strict,
      "Toggle the span containment rule (on by default)");
  CLI::Option* split_opt =
      app.add_option("--split", split_name, "Split label for ingested rows");
  app.add_flag("--json", json, "Print reports as JSON instead of tables");
  app.add_option("--report", report_prefix,
                 "Also write <prefix>.json and <prefix>.txt");
  app.add_option("--lexicon-a", lexicon_a, "Lexicon for language A");
  app.add_option("--lexicon-b", lexicon_b, "Lexicon for language B");

  std::string input, output, rejects, accepted, corpus, pred, gold, format,
      out_dir, sizes_csv;
  size_t size = 0;
  bool reference = false;
  BackendFlags backend_flags;

  CLI::App* ingest = app.add_subcommand("ingest", "Parse and validate a corpus");
  ingest->add_option("input", input)->required();
  ingest->add_option("--out", output, "Write the canonicalized corpus");
  ingest->add_option("--rejects", rejects, "Rejects JSONL");

  CLI::App* mark = app.add_subcommand("mark", "Write generation requests");
  mark->add_option("input", input)->required();
  mark->add_option("--out", output)->required();

  CLI::App* export_seed =
      app.add_subcommand("export-seed", "Sample seed fine-tuning pairs");
  export_seed->add_option("input", input,
                          "TSV: domain, utterance, parse, marked CS")
      ->required();
  export_seed->add_option("--size", size)->required();
  export_seed->add_option("--out", output)->required();

  CLI::App* generate = app.add_subcommand("generate", "Call the generator");
  generate->add_option("input", input, "Requests JSONL")->required();
  generate->add_option("--out", output, "Records JSONL")->required();
  backend_flags.Register(generate);

  CLI::App* filter = app.add_subcommand("filter", "Filter generated records");
  filter->add_option("input", input, "Records JSONL")->required();
  filter->add_option("--accepted", accepted);
  filter->add_option("--rejects", rejects);

  CLI::App* align = app.add_subcommand("align", "Reconstruct CS parses");
  align->add_option("input", input, "Accepted records JSONL")->required();
  align->add_option("--corpus", corpus, "English corpus TSV")->required();
  align->add_option("--out", output, "Augmented TSV")->required();
  align->add_option("--rejects", rejects);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("input", input)->required();
  format = "tsv";
  stats->add_option("--format", format, "tsv | lines")
      ->check(CLI::IsMember({"tsv", "lines"}));
  stats->add_flag("--reference", reference,
                  "Show the published Hinglish-TOP row for comparison");

  CLI::App* eval = app.add_subcommand("eval", "Exact-match evaluation");
  eval->add_option("pred", pred)->required();
  eval->add_option("gold", gold)->required();

  CLI::App* augment = app.add_subcommand("augment", "Run the whole pipeline");
  augment->add_option("--corpus", corpus);
  augment->add_option("--out-dir", out_dir);
  backend_flags.Register(augment);

  CLI::App* splits = app.add_subcommand("splits", "Nested seed-set files");
  splits->add_option("input", input)->required();
  splits->add_option("--out-dir", out_dir)->required();
  splits->add_option("--sizes", sizes_csv, "Comma-separated sizes");

  std::vector<const char*> argv = {"csaug"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto fail = [&err](const absl::Status& s) {
    err << s.message() << "\n";
    return ExitCodeFor(s);
  };

  PipelineConfig cfg;
  if (!config_path.empty()) {
    absl::StatusOr<PipelineConfig> loaded = LoadConfig(config_path);
    if (!loaded.ok()) {
      err << loaded.status().message() << "\n";
      return HasErrorCode(loaded.status(), ErrorCode::kInvalidConfig)
                 ? kExitUsage
                 : ExitCodeFor(loaded.status());
    }
    cfg = *std::move(loaded);
  }
  if (seed_opt->count() > 0) cfg.rng_seed = rng_seed;
  if (no_header) cfg.ingest.header = false;
  if (dedup) cfg.ingest.dedup = true;
  if (strict_opt->count() > 0) cfg.strict_containment = strict;
  if (split_opt->count() > 0) {
    std::optional<Split> split = ParseSplit(split_name);
    if (!split) {
      err << "usage error: unknown split '" << split_name << "'\n";
      return kExitUsage;
    }
    cfg.ingest.split = *split;
  }
  if (!lexicon_a.empty()) cfg.lexicon_a = lexicon_a;
  if (!lexicon_b.empty()) cfg.lexicon_b = lexicon_b;
  backend_flags.Apply(cfg.backend);
  if (!corpus.empty()) cfg.corpus_path = corpus;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (!sizes_csv.empty()) {
    cfg.seed_sizes.clear();
    for (absl::string_view piece : absl::StrSplit(sizes_csv, ',')) {
      size_t n = 0;
      if (!absl::SimpleAtoi(piece, &n)) {
        err << "usage error: bad size '" << piece << "'\n";
        return kExitUsage;
      }
      cfg.seed_sizes.push_back(n);
    }
  }
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) {
    err << s.message() << "\n";
    return kExitUsage;
  }

  const Reporter rep{json, report_prefix, &out};
  absl::Status status;
  if (ingest->parsed()) {
    status = CmdIngest(cfg, input, output, rejects, rep);
  } else if (mark->parsed()) {
    status = CmdMark(cfg, input, output, rep);
  } else if (export_seed->parsed()) {
    status = CmdExportSeed(cfg, input, size, output, rep);
  } else if (generate->parsed()) {
    status = CmdGenerate(cfg, input, output, rep);
  } else if (filter->parsed()) {
    status = CmdFilter(cfg, input, accepted, rejects, rep);
  } else if (align->parsed()) {
    status = CmdAlign(cfg, input, corpus, output, rejects, rep);
  } else if (stats->parsed()) {
    status = CmdStats(cfg, input, format, reference, rep);
  } else if (eval->parsed()) {
    status = CmdEval(cfg, pred, gold, rep);
  } else if (augment->parsed()) {
    if (cfg.corpus_path.empty() || cfg.output_dir.empty()) {
      err << "usage error: augment needs a corpus and an output directory\n";
      return kExitUsage;
    }
    status = CmdAugment(cfg, rep);
  } else if (splits->parsed()) {
    status = CmdSplits(cfg, input, out_dir, rep);
  }
  return status.ok() ? kExitOk : fail(status);
}

}  // namespace csaug
