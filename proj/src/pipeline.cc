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

#include "csaug/pipeline.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <unordered_map>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/string_view.h"
#include "csaug/aligner.h"
#include "csaug/corpus_stats.h"
#include "csaug/errors.h"
#include "csaug/file_util.h"
#include "csaug/marker.h"
#include "csaug/span_filter.h"
#include "csaug/status_macros.h"

namespace csaug {
namespace {

namespace fs = std::filesystem;

absl::Status ConfigError(absl::string_view message) {
  return MakeError(ErrorCode::kInvalidConfig, message);
}

absl::Status CheckKeys(const nlohmann::json& j, absl::string_view where,
                       std::initializer_list<absl::string_view> allowed) {
  if (!j.is_object()) {
    return ConfigError(absl::StrCat(where, " must be an object"));
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (absl::string_view a : allowed) known = known || a == key;
    if (!known) {
      return ConfigError(absl::StrCat("unknown key ", where, ".", key));
    }
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status Read(const nlohmann::json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return absl::OkStatus();
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    return ConfigError(absl::StrCat("bad value for '", key, "'"));
  }
  return absl::OkStatus();
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t HashId(absl::string_view id) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

absl::Status WriteJsonLines(const fs::path& path,
                            const std::vector<nlohmann::json>& objects) {
  return WriteFile(path.string(), ToJsonLines(objects));
}

absl::Status WriteJson(const fs::path& path, const nlohmann::json& j) {
  return WriteFile(path.string(), j.dump(2) + "\n");
}

absl::StatusOr<std::unordered_map<std::string, GenerationRecord>>
LoadCheckpoint(const fs::path& path) {
  std::unordered_map<std::string, GenerationRecord> out;
  if (!fs::exists(path)) return out;
  ASSIGN_OR_RETURN(std::string text, ReadFile(path.string()));
  ASSIGN_OR_RETURN(std::vector<nlohmann::json> lines, ParseJsonLines(text));
  for (const nlohmann::json& j : lines) {
    ASSIGN_OR_RETURN(GenerationRecord r, RecordFromJson(j));
    out.insert_or_assign(r.request.id, std::move(r));
  }
  return out;
}

std::string RenderSummary(const AugmentSummary& s,
                          const ThroughputReport& throughput) {
  std::string out = "Augmentation summary\n";
  auto row = [&out](absl::string_view name, int v) {
    absl::StrAppendFormat(&out, "  %-24s %8d\n", name, v);
  };
  row("ingest rejects", s.ingest_rejects);
  row("inputs", s.inputs);
  row("generation failures", s.generation_failures);
  row("filter rejects", s.filter_rejects);
  row("alignment rejects", s.alignment_rejects);
  row("aligned", s.aligned);
  absl::StrAppendFormat(&out, "  %-24s %8s\n", "filter throughput",
                        FormatPercent(throughput.throughput));
  absl::StrAppendFormat(
      &out, "  %-24s %8s\n", "end-to-end yield",
      FormatPercent(s.inputs == 0 ? 0.0
                                  : static_cast<double>(s.aligned) / s.inputs));
  absl::StrAppendFormat(&out, "  %-24s %8s\n", "conserved",
                        s.Conserved() ? "yes" : "NO");
  return out;
}

}  // namespace

absl::StatusOr<PipelineConfig> ConfigFromJson(const nlohmann::json& j) {
  PipelineConfig c;
  RETURN_IF_ERROR(CheckKeys(j, "config",
                            {"paths", "backend", "rng_seed", "seed_sizes",
                             "flags"}));
  if (auto it = j.find("paths"); it != j.end()) {
    RETURN_IF_ERROR(CheckKeys(*it, "paths",
                              {"corpus", "output_dir", "lexicon_a",
                               "lexicon_b"}));
    RETURN_IF_ERROR(Read(*it, "corpus", c.corpus_path));
    RETURN_IF_ERROR(Read(*it, "output_dir", c.output_dir));
    RETURN_IF_ERROR(Read(*it, "lexicon_a", c.lexicon_a));
    RETURN_IF_ERROR(Read(*it, "lexicon_b", c.lexicon_b));
  }
  if (auto it = j.find("backend"); it != j.end()) {
    BackendConfig& b = c.backend;
    RETURN_IF_ERROR(CheckKeys(
        *it, "backend",
        {"kind", "url", "batch_size", "timeout_s", "retries", "max_in_flight",
         "initial_backoff_s", "replay_file", "mock_table", "mock_mode",
         "mock_corrupt_mode", "mock_corrupt_every", "mock_corrupt_rate"}));
    RETURN_IF_ERROR(Read(*it, "kind", b.kind));
    RETURN_IF_ERROR(Read(*it, "url", b.url));
    RETURN_IF_ERROR(Read(*it, "batch_size", b.batch_size));
    RETURN_IF_ERROR(Read(*it, "timeout_s", b.timeout_s));
    RETURN_IF_ERROR(Read(*it, "retries", b.retries));
    RETURN_IF_ERROR(Read(*it, "max_in_flight", b.max_in_flight));
    RETURN_IF_ERROR(Read(*it, "initial_backoff_s", b.initial_backoff_s));
    RETURN_IF_ERROR(Read(*it, "replay_file", b.replay_file));
    RETURN_IF_ERROR(Read(*it, "mock_table", b.mock_table));
    RETURN_IF_ERROR(Read(*it, "mock_mode", b.mock_mode));
    RETURN_IF_ERROR(Read(*it, "mock_corrupt_mode", b.mock_corrupt_mode));
    RETURN_IF_ERROR(Read(*it, "mock_corrupt_every", b.mock_corrupt_every));
    RETURN_IF_ERROR(Read(*it, "mock_corrupt_rate", b.mock_corrupt_rate));
  }
  RETURN_IF_ERROR(Read(j, "rng_seed", c.rng_seed));
  RETURN_IF_ERROR(Read(j, "seed_sizes", c.seed_sizes));
  if (auto it = j.find("flags"); it != j.end()) {
    RETURN_IF_ERROR(
        CheckKeys(*it, "flags", {"header", "dedup", "strict_containment"}));
    RETURN_IF_ERROR(Read(*it, "header", c.ingest.header));
    RETURN_IF_ERROR(Read(*it, "dedup", c.ingest.dedup));
    RETURN_IF_ERROR(Read(*it, "strict_containment", c.strict_containment));
  }
  RETURN_IF_ERROR(ValidateConfig(c));
  return c;
}

absl::StatusOr<PipelineConfig> LoadConfig(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return ConfigError(absl::StrCat(path, " is not valid JSON"));
  }
  return ConfigFromJson(j);
}

absl::Status ValidateConfig(const PipelineConfig& config) {
  for (size_t i = 1; i < config.seed_sizes.size(); ++i) {
    if (config.seed_sizes[i] <= config.seed_sizes[i - 1]) {
      return ConfigError("seed_sizes must be strictly increasing");
    }
  }
  const BackendConfig& b = config.backend;
  if (b.kind != "mock" && b.kind != "replay" && b.kind != "http") {
    return ConfigError(absl::StrCat("unknown backend.kind '", b.kind, "'"));
  }
  if (b.batch_size < 1 || b.retries < 0 || b.max_in_flight < 1 ||
      b.timeout_s <= 0 || b.initial_backoff_s < 0) {
    return ConfigError("backend limits out of range");
  }
  if (b.mock_corrupt_every < 0 || b.mock_corrupt_rate < 0 ||
      b.mock_corrupt_rate > 1) {
    return ConfigError("mock corruption settings out of range");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<GenerationBackend>> MakeBackend(
    const BackendConfig& config, uint64_t rng_seed) {
  if (config.kind == "http") {
    if (config.url.empty()) return ConfigError("backend.url is required");
    return std::unique_ptr<GenerationBackend>(
        new HttpBackend(config.url, config.timeout_s));
  }
  if (config.kind == "replay") {
    if (config.replay_file.empty()) {
      return ConfigError("backend.replay_file is required");
    }
    ASSIGN_OR_RETURN(auto replay, ReplayBackend::FromFile(config.replay_file));
    return std::unique_ptr<GenerationBackend>(std::move(replay));
  }
  SubstitutionTable table;
  if (!config.mock_table.empty()) {
    ASSIGN_OR_RETURN(std::string text, ReadFile(config.mock_table));
    ASSIGN_OR_RETURN(table, ParseSubstitutionTable(text));
  }
  ASSIGN_OR_RETURN(MockMode base, ParseMockMode(config.mock_mode));
  ASSIGN_OR_RETURN(MockMode corrupt, ParseMockMode(config.mock_corrupt_mode));
  const int every = config.mock_corrupt_every;
  const double rate = config.mock_corrupt_rate;
  auto selector = [=](const GenerationRequest& r) {
    if (every > 0) {
      uint64_t ordinal = 0;
      if (!absl::SimpleAtoi(r.id, &ordinal)) ordinal = HashId(r.id);
      if (ordinal % every == 0) return corrupt;
    }
    if (rate > 0) {
      const uint64_t h = SplitMix64(rng_seed ^ HashId(r.id));
      if (static_cast<double>(h >> 11) * 0x1.0p-53 < rate) return corrupt;
    }
    return base;
  };
  return std::unique_ptr<GenerationBackend>(
      new MockBackend(std::move(table), selector));
}

GatewayOptions GatewayOptionsFrom(const BackendConfig& config) {
  GatewayOptions o;
  o.batch_size = config.batch_size;
  o.retries = config.retries;
  o.max_in_flight = config.max_in_flight;
  o.initial_backoff = std::chrono::milliseconds(
      static_cast<int64_t>(config.initial_backoff_s * 1000));
  return o;
}

std::string RequestId(size_t index) { return absl::StrCat(index + 1); }

std::vector<GenerationRequest> MakeRequests(
    const std::vector<Utterance>& corpus) {
  std::vector<GenerationRequest> out;
  out.reserve(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    out.push_back(
        {RequestId(i), corpus[i].domain, MarkTree(*corpus[i].parse).Text()});
  }
  return out;
}

nlohmann::json ToJson(const AugmentSummary& s) {
  return {{"ingest_rejects", s.ingest_rejects},
          {"inputs", s.inputs},
          {"generation_failures", s.generation_failures},
          {"filter_rejects", s.filter_rejects},
          {"alignment_rejects", s.alignment_rejects},
          {"aligned", s.aligned},
          {"conserved", s.Conserved()}};
}

absl::StatusOr<AugmentSummary> RunAugment(const PipelineConfig& config) {
  RETURN_IF_ERROR(ValidateConfig(config));
  if (config.output_dir.empty()) return ConfigError("paths.output_dir unset");
  const fs::path out_dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    return MakeError(ErrorCode::kFileUnreadable,
                     absl::StrCat("cannot create ", config.output_dir));
  }

  AugmentSummary summary;
  ASSIGN_OR_RETURN(IngestResult corpus,
                   Ingest(config.corpus_path, config.ingest));
  summary.ingest_rejects = static_cast<int>(corpus.rejects.size());
  summary.inputs = static_cast<int>(corpus.utterances.size());
  {
    std::vector<nlohmann::json> lines;
    for (const IngestReject& r : corpus.rejects) lines.push_back(ToJson(r));
    RETURN_IF_ERROR(WriteJsonLines(out_dir / kIngestRejectsFile, lines));
  }

  // Generation, resuming from the raw checkpoint.
  const std::vector<GenerationRequest> requests =
      MakeRequests(corpus.utterances);
  const fs::path checkpoint = out_dir / kCheckpointFile;
  ASSIGN_OR_RETURN(auto previous, LoadCheckpoint(checkpoint));
  std::vector<std::optional<GenerationRecord>> records(requests.size());
  std::vector<GenerationRequest> pending;
  std::vector<size_t> pending_index;
  for (size_t i = 0; i < requests.size(); ++i) {
    auto it = previous.find(requests[i].id);
    if (it != previous.end() && it->second.ok() &&
        it->second.request == requests[i]) {
      records[i] = it->second;
      ++summary.resumed_from_checkpoint;
    } else {
      pending.push_back(requests[i]);
      pending_index.push_back(i);
    }
  }
  {
    std::vector<nlohmann::json> kept;
    for (const auto& r : records) {
      if (r.has_value()) kept.push_back(ToJson(*r));
    }
    RETURN_IF_ERROR(WriteJsonLines(checkpoint, kept));
  }
  if (!pending.empty()) {
    ASSIGN_OR_RETURN(auto backend,
                     MakeBackend(config.backend, config.rng_seed));
    std::ofstream append(checkpoint, std::ios::app | std::ios::binary);
    auto sink = [&append](const GenerationRecord& r) {
      append << ToJsonLines({ToJson(r)});
      append.flush();
    };
    ASSIGN_OR_RETURN(std::vector<GenerationRecord> generated,
                     GenerateBatch(pending, *backend,
                                   GatewayOptionsFrom(config.backend), sink));
    for (size_t k = 0; k < generated.size(); ++k) {
      records[pending_index[k]] = std::move(generated[k]);
    }
  }
  std::vector<GenerationRecord> ok_records;
  std::vector<nlohmann::json> checkpoint_lines, failure_lines;
  for (const auto& r : records) {
    checkpoint_lines.push_back(ToJson(*r));
    if (r->ok()) {
      ok_records.push_back(*r);
    } else {
      failure_lines.push_back({{"id", r->request.id}, {"error", r->error}});
    }
  }
  summary.generation_failures = static_cast<int>(failure_lines.size());
  RETURN_IF_ERROR(WriteJsonLines(checkpoint, checkpoint_lines));
  RETURN_IF_ERROR(
      WriteJsonLines(out_dir / kGenerationFailuresFile, failure_lines));

  // Filtering.
  FilterOptions filter_options;
  filter_options.check_containment = config.strict_containment;
  FilterResult filtered = FilterCorpus(ok_records, filter_options);
  summary.filter_rejects = static_cast<int>(filtered.rejected.size());
  {
    std::vector<nlohmann::json> lines;
    for (const RejectedRecord& r : filtered.rejected) lines.push_back(ToJson(r));
    RETURN_IF_ERROR(WriteJsonLines(out_dir / kFilterRejectsFile, lines));
    RETURN_IF_ERROR(WriteJson(out_dir / kThroughputJson,
                              ToJson(filtered.report)));
    RETURN_IF_ERROR(WriteFile((out_dir / kThroughputTxt).string(),
                              RenderThroughputTable(filtered.report)));
  }

  // Alignment.
  std::vector<AlignInput> align_inputs;
  align_inputs.reserve(filtered.accepted.size());
  for (GenerationRecord& r : filtered.accepted) {
    size_t ordinal = 0;
    if (!absl::SimpleAtoi(r.request.id, &ordinal) || ordinal == 0 ||
        ordinal > corpus.utterances.size()) {
      return MakeError(ErrorCode::kInternalInvariantViolation,
                       absl::StrCat("unknown request id ", r.request.id));
    }
    align_inputs.push_back({std::move(r), corpus.utterances[ordinal - 1]});
  }
  AlignmentResult aligned = AlignCorpus(align_inputs);
  summary.aligned = static_cast<int>(aligned.aligned.size());
  summary.alignment_rejects = static_cast<int>(aligned.rejects.size());
  {
    std::string tsv;
    if (config.ingest.header) absl::StrAppend(&tsv, kCorpusHeader, "\n");
    tsv += AlignedToTsv(aligned.aligned);
    RETURN_IF_ERROR(WriteFile((out_dir / kAugmentedFile).string(), tsv));
    std::vector<nlohmann::json> lines;
    for (const AlignReject& r : aligned.rejects) lines.push_back(ToJson(r));
    RETURN_IF_ERROR(WriteJsonLines(out_dir / kAlignRejectsFile, lines));
  }

  // Statistics over the augmented utterances.
  if (!config.lexicon_a.empty() && !config.lexicon_b.empty()) {
    ASSIGN_OR_RETURN(Lexicon a, LoadLexicon(config.lexicon_a));
    ASSIGN_OR_RETURN(Lexicon b, LoadLexicon(config.lexicon_b));
    ASSIGN_OR_RETURN(auto tagger, LexiconTagger::Create(std::move(a),
                                                        std::move(b)));
    std::vector<std::string> texts;
    for (const AlignedRecord& r : aligned.aligned) texts.push_back(r.cs_text);
    absl::StatusOr<CorpusStats> stats = ComputeCorpusStats(texts, *tagger);
    if (stats.ok()) {
      RETURN_IF_ERROR(WriteJson(out_dir / kStatsJson, ToJson(*stats)));
      RETURN_IF_ERROR(WriteFile((out_dir / kStatsTxt).string(),
                                RenderStatsTable(*stats)));
    } else if (HasErrorCode(stats.status(), ErrorCode::kEmptyCorpus)) {
      RETURN_IF_ERROR(
          WriteJson(out_dir / kStatsJson, {{"error", "EmptyCorpus"}}));
    } else {
      return stats.status();
    }
  }

  RETURN_IF_ERROR(WriteJson(out_dir / kSummaryJson, ToJson(summary)));
  RETURN_IF_ERROR(WriteFile((out_dir / kSummaryTxt).string(),
                            RenderSummary(summary, filtered.report)));
  if (!summary.Conserved()) {
    return MakeError(ErrorCode::kInternalInvariantViolation,
                     "inputs are not fully partitioned");
  }
  return summary;
}

absl::StatusOr<std::map<size_t, std::vector<size_t>>> MakeSplits(
    const std::vector<Utterance>& corpus, const std::vector<size_t>& sizes,
    uint64_t seed) {
  std::vector<size_t> train;
  std::vector<std::string> domains;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].split != Split::kTrain) continue;
    train.push_back(i);
    domains.push_back(corpus[i].domain);
  }
  for (size_t size : sizes) {
    if (size > train.size()) {
      return MakeError(ErrorCode::kSizeTooLarge,
                       absl::StrCat("seed size ", size, " exceeds ",
                                    train.size(), " train utterances"));
    }
  }
  const StratifiedChain chain(domains, seed);
  std::map<size_t, std::vector<size_t>> out;
  for (size_t size : sizes) {
    std::vector<size_t>& picked = out[size];
    for (size_t k : chain.Take(size)) picked.push_back(train[k]);
  }
  return out;
}

absl::Status WriteSplits(const std::vector<Utterance>& corpus,
                         const std::map<size_t, std::vector<size_t>>& splits,
                         const std::string& dir, bool header) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return MakeError(ErrorCode::kFileUnreadable,
                     absl::StrCat("cannot create ", dir));
  }
  for (const auto& [size, indices] : splits) {
    std::string tsv;
    if (header) absl::StrAppend(&tsv, kCorpusHeader, "\n");
    for (size_t i : indices) {
      absl::StrAppend(&tsv, UtteranceToTsvLine(corpus[i]), "\n");
    }
    RETURN_IF_ERROR(WriteFile(
        (fs::path(dir) / absl::StrCat("seed_", size, ".tsv")).string(), tsv));
  }
  return absl::OkStatus();
}

}  // namespace csaug
