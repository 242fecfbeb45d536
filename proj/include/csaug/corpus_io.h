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

#ifndef CSAUG_CORPUS_IO_H_
#define CSAUG_CORPUS_IO_H_

// TSV corpus files: domain<TAB>utterance<TAB>semantic_parse, UTF-8, one
// record per line, with an optional header row.

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "csaug/marker.h"
#include "csaug/top_tree.h"
#include "json.hpp"

namespace csaug {

inline constexpr char kCorpusHeader[] = "domain\tutterance\tsemantic_parse";

struct IngestOptions {
  bool header = true;
  bool dedup = false;
  Split split = Split::kTrain;
};

struct TsvRow {
  int64_t line = 0;  // 1-based physical line number.
  std::vector<std::string> columns;
};

// Streams rows of a TSV file with a fixed column count. Blank lines are
// skipped; a trailing '\r' is dropped.
class TsvReader {
 public:
  static absl::StatusOr<TsvReader> Open(const std::string& path,
                                        int columns, bool header);

  // False at end of file. ColumnCountMismatch names the offending line.
  absl::StatusOr<bool> Next(TsvRow& row);

 private:
  TsvReader(std::ifstream in, std::string path, int columns, bool header);

  std::ifstream in_;
  std::string path_;
  int columns_;
  bool skip_header_;
  int64_t line_ = 0;
  std::string buffer_;
};

struct IngestReject {
  int64_t line = 0;
  absl::Status reason;
};

nlohmann::json ToJson(const IngestReject& reject);

// Parses one corpus row. Parse failures keep their top_model error kind;
// a parse whose tokens differ from the utterance gives MisalignedParse.
absl::StatusOr<Utterance> UtteranceFromRow(const TsvRow& row, Split split);

// Streaming ingest. Rows that fail to parse go to `on_reject`; hard errors
// (FileUnreadable, ColumnCountMismatch) stop the scan.
absl::Status ForEachUtterance(
    const std::string& path, const IngestOptions& options,
    const std::function<void(int64_t line, Utterance)>& on_utterance,
    const std::function<void(IngestReject)>& on_reject);

struct IngestResult {
  std::vector<Utterance> utterances;
  std::vector<int64_t> lines;  // Source line of each utterance.
  std::vector<IngestReject> rejects;
};

absl::StatusOr<IngestResult> Ingest(const std::string& path,
                                    const IngestOptions& options);

// Four columns: domain, utterance, semantic_parse, marked code-switched text.
// Unparseable rows fail the read (InvalidPair).
absl::StatusOr<std::vector<AnnotatedPair>> ReadAnnotatedPairs(
    const std::string& path, const IngestOptions& options);

std::string UtteranceToTsvLine(const Utterance& utterance);

}  // namespace csaug

#endif  // CSAUG_CORPUS_IO_H_
