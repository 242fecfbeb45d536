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

#include "csaug/corpus_io.h"

#include <unordered_set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/status_macros.h"

namespace csaug {

absl::StatusOr<TsvReader> TsvReader::Open(const std::string& path,
                                          int columns, bool header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorCode::kFileUnreadable,
                     absl::StrCat("cannot open ", path));
  }
  return TsvReader(std::move(in), path, columns, header);
}

TsvReader::TsvReader(std::ifstream in, std::string path, int columns,
                     bool header)
    : in_(std::move(in)),
      path_(std::move(path)),
      columns_(columns),
      skip_header_(header) {}

absl::StatusOr<bool> TsvReader::Next(TsvRow& row) {
  while (std::getline(in_, buffer_)) {
    ++line_;
    absl::string_view line = buffer_;
    absl::ConsumeSuffix(&line, "\r");
    if (skip_header_) {
      skip_header_ = false;
      continue;
    }
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    row.line = line_;
    row.columns = absl::StrSplit(line, '\t');
    if (static_cast<int>(row.columns.size()) != columns_) {
      return MakeError(ErrorCode::kColumnCountMismatch,
                       absl::StrCat(path_, ":", line_, ": expected ", columns_,
                                    " columns, found ", row.columns.size()));
    }
    return true;
  }
  if (in_.bad()) {
    return MakeError(ErrorCode::kFileUnreadable,
                     absl::StrCat("read failed for ", path_));
  }
  return false;
}

nlohmann::json ToJson(const IngestReject& reject) {
  const std::optional<ErrorCode> code = GetErrorCode(reject.reason);
  return {{"line", reject.line},
          {"error", code ? std::string(ErrorCodeName(*code)) : "Unknown"},
          {"message", std::string(reject.reason.message())}};
}

absl::StatusOr<Utterance> UtteranceFromRow(const TsvRow& row, Split split) {
  Utterance u;
  u.domain = row.columns.at(0);
  u.split = split;
  u.text = absl::StrJoin(Tokenize(row.columns.at(1)), " ");
  ASSIGN_OR_RETURN(ParseTree tree, ParseTop(row.columns.at(2)));
  if (TreeTokens(tree) != Tokenize(u.text)) {
    return MakeError(ErrorCode::kMisalignedParse,
                     absl::StrCat("parse tokens differ from utterance '",
                                  u.text, "'"));
  }
  u.parse = std::move(tree);
  return u;
}

absl::Status ForEachUtterance(
    const std::string& path, const IngestOptions& options,
    const std::function<void(int64_t line, Utterance)>& on_utterance,
    const std::function<void(IngestReject)>& on_reject) {
  ASSIGN_OR_RETURN(TsvReader reader, TsvReader::Open(path, 3, options.header));
  std::unordered_set<std::string> seen;
  TsvRow row;
  while (true) {
    ASSIGN_OR_RETURN(bool more, reader.Next(row));
    if (!more) break;
    absl::StatusOr<Utterance> u = UtteranceFromRow(row, options.split);
    if (!u.ok()) {
      on_reject({row.line, u.status()});
      continue;
    }
    if (options.dedup) {
      std::string key = absl::StrJoin(
          {u->domain, u->text, Serialize(*u->parse)}, "\t");
      if (!seen.insert(std::move(key)).second) continue;
    }
    on_utterance(row.line, *std::move(u));
  }
  return absl::OkStatus();
}

absl::StatusOr<IngestResult> Ingest(const std::string& path,
                                    const IngestOptions& options) {
  IngestResult result;
  RETURN_IF_ERROR(ForEachUtterance(
      path, options,
      [&](int64_t line, Utterance u) {
        result.lines.push_back(line);
        result.utterances.push_back(std::move(u));
      },
      [&](IngestReject r) { result.rejects.push_back(std::move(r)); }));
  return result;
}

absl::StatusOr<std::vector<AnnotatedPair>> ReadAnnotatedPairs(
    const std::string& path, const IngestOptions& options) {
  ASSIGN_OR_RETURN(TsvReader reader, TsvReader::Open(path, 4, options.header));
  std::vector<AnnotatedPair> out;
  TsvRow row;
  while (true) {
    ASSIGN_OR_RETURN(bool more, reader.Next(row));
    if (!more) break;
    absl::StatusOr<Utterance> u = UtteranceFromRow(row, options.split);
    if (!u.ok()) {
      return MakeError(ErrorCode::kInvalidPair,
                       absl::StrCat(path, ":", row.line, ": ",
                                    u.status().message()));
    }
    out.push_back({*std::move(u), absl::StrJoin(Tokenize(row.columns[3]), " ")});
  }
  return out;
}

std::string UtteranceToTsvLine(const Utterance& utterance) {
  return absl::StrCat(utterance.domain, "\t", utterance.text, "\t",
                      utterance.parse ? Serialize(*utterance.parse) : "");
}

}  // namespace csaug
