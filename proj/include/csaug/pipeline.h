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

#ifndef CSAUG_PIPELINE_H_
#define CSAUG_PIPELINE_H_

// End-to-end augmentation: ingest -> mark -> generate -> filter -> align ->
// stats, plus the seed-set split scaffolding.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "csaug/corpus_io.h"
#include "csaug/gen_client.h"
#include "json.hpp"

namespace csaug {

inline constexpr uint64_t kDefaultRngSeed = 20220417;

struct BackendConfig {
  std::string kind = "mock";  // mock | replay | http
  std::string url;
  int batch_size = 64;
  double timeout_s = 30.0;
  int retries = 3;
  int max_in_flight = 4;
  double initial_backoff_s = 0.5;
  std::string replay_file;
  // Mock only.
  std::string mock_table;
  std::string mock_mode = "faithful";
  std::string mock_corrupt_mode = "corrupt-R3";
  int mock_corrupt_every = 0;      // Corrupt every n-th request (by ordinal).
  double mock_corrupt_rate = 0.0;  // Or a seeded fraction of requests.
};

struct PipelineConfig {
  std::string corpus_path;
  std::string output_dir;
  std::string lexicon_a;
  std::string lexicon_b;
  BackendConfig backend;
  uint64_t rng_seed = kDefaultRngSeed;
  std::vector<size_t> seed_sizes = {100, 500, 1000, 2000, 3000};
  IngestOptions ingest;
  bool strict_containment = true;
};

// Keys mirror the struct layout: paths.{corpus,output_dir,lexicon_a,
// lexicon_b}, backend.{kind,url,batch_size,timeout_s,retries,...}, rng_seed,
// seed_sizes, flags.{header,dedup,strict_containment}. Unknown keys are
// rejected. Errors: InvalidConfig.
absl::StatusOr<PipelineConfig> ConfigFromJson(const nlohmann::json& j);
absl::StatusOr<PipelineConfig> LoadConfig(const std::string& path);
absl::Status ValidateConfig(const PipelineConfig& config);

absl::StatusOr<std::unique_ptr<GenerationBackend>> MakeBackend(
    const BackendConfig& config, uint64_t rng_seed);

GatewayOptions GatewayOptionsFrom(const BackendConfig& config);

// Requests for a corpus; ids are 1-based ordinals.
std::vector<GenerationRequest> MakeRequests(
    const std::vector<Utterance>& corpus);

std::string RequestId(size_t index);

struct AugmentSummary {
  int ingest_rejects = 0;
  int inputs = 0;
  int generation_failures = 0;
  int filter_rejects = 0;
  int alignment_rejects = 0;
  int aligned = 0;
  int resumed_from_checkpoint = 0;

  bool Conserved() const {
    return inputs ==
           aligned + filter_rejects + alignment_rejects + generation_failures;
  }
};

nlohmann::json ToJson(const AugmentSummary& summary);

// Output files inside config.output_dir.
inline constexpr char kCheckpointFile[] = "generations.jsonl";
inline constexpr char kAugmentedFile[] = "augmented.tsv";
inline constexpr char kIngestRejectsFile[] = "ingest_rejects.jsonl";
inline constexpr char kGenerationFailuresFile[] = "generation_failures.jsonl";
inline constexpr char kFilterRejectsFile[] = "filter_rejects.jsonl";
inline constexpr char kAlignRejectsFile[] = "align_rejects.jsonl";
inline constexpr char kThroughputJson[] = "throughput.json";
inline constexpr char kThroughputTxt[] = "throughput.txt";
inline constexpr char kStatsJson[] = "stats.json";
inline constexpr char kStatsTxt[] = "stats.txt";
inline constexpr char kSummaryJson[] = "summary.json";
inline constexpr char kSummaryTxt[] = "summary.txt";

// Resumes from an existing checkpoint in the output directory: records whose
// request is unchanged and that carry no error are reused.
absl::StatusOr<AugmentSummary> RunAugment(const PipelineConfig& config);

// Uses only utterances of the train split. Result maps each size to sorted
// corpus indices; each set contains every smaller one.
//
// Errors: SizeTooLarge.
absl::StatusOr<std::map<size_t, std::vector<size_t>>> MakeSplits(
    const std::vector<Utterance>& corpus, const std::vector<size_t>& sizes,
    uint64_t seed);

// Writes <dir>/seed_<n>.tsv per size in corpus TSV format.
absl::Status WriteSplits(const std::vector<Utterance>& corpus,
                         const std::map<size_t, std::vector<size_t>>& splits,
                         const std::string& dir, bool header);

}  // namespace csaug

#endif  // CSAUG_PIPELINE_H_
