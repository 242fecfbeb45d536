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

#ifndef CSAUG_GEN_CLIENT_H_
#define CSAUG_GEN_CLIENT_H_

// Gateway to the code-switch generator. The generator itself is an external
// service; this module batches requests, retries transient failures and
// re-sequences responses to input order.
//
// Wire protocol (HTTP POST /generate): the body is JSON lines of
//   {"id": "...", "domain": "...", "marked_text": "..."}
// and the response is JSON lines of
//   {"id": "...", "candidates": ["..."], "model_info": "..."}
// Only the first candidate is used.

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "absl/strings/string_view.h"
#include "csaug/generation.h"
#include "json.hpp"

namespace csaug {

struct BackendResponse {
  std::string id;
  std::vector<std::string> candidates;
  std::string model_info;
};

absl::StatusOr<BackendResponse> ResponseFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const BackendResponse& response);

// Implementations must be safe to call from several threads at once.
class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;

  // Responses may come back in any order, with duplicates or gaps; the
  // gateway sorts that out. Transient failures should be reported as
  // kUnavailable / kDeadlineExceeded so the gateway retries them.
  virtual absl::StatusOr<std::vector<BackendResponse>> Generate(
      absl::Span<const GenerationRequest> batch) = 0;
};

// Serves responses recorded in a JSONL file, keyed by id (first wins).
class ReplayBackend : public GenerationBackend {
 public:
  static absl::StatusOr<std::unique_ptr<ReplayBackend>> FromJsonLines(
      absl::string_view text);
  static absl::StatusOr<std::unique_ptr<ReplayBackend>> FromFile(
      const std::string& path);

  absl::StatusOr<std::vector<BackendResponse>> Generate(
      absl::Span<const GenerationRequest> batch) override;

 private:
  std::unordered_map<std::string, BackendResponse> responses_;
};

class HttpBackend : public GenerationBackend {
 public:
  // `url` is scheme://host[:port]; requests go to <url>/generate.
  HttpBackend(std::string url, double timeout_s);

  absl::StatusOr<std::vector<BackendResponse>> Generate(
      absl::Span<const GenerationRequest> batch) override;

 private:
  std::string url_;
  double timeout_s_;
};

// Test double for the generator. Faithful mode rewrites plain tokens through
// a substitution table and leaves every bracket untouched, so its output
// always passes the filter. Each corrupt mode injects one filter error:
//
//   R1  duplicates the first top-level span right after itself
//       (UnequalSpanCount).
//   R2  spells the id of the last closing bracket in words, ]_2 -> ]_two
//       (MalformedSpanId).
//   R3  drops the last closing bracket (UnbalancedBrackets).
//   R4  rewrites the id of the last closing bracket to max id + 1
//       (MismatchedSpanIds).
//
// Inputs without spans: R1 and R4 prepend "[ x ]_1", which reads as
// MismatchedSpanIds plus UnequalSpanCount; R2 prepends "[ x ]_one"; R3
// prepends a stray "[". Here x is the first plain token.
enum class MockMode { kFaithful, kCorruptR1, kCorruptR2, kCorruptR3, kCorruptR4 };

absl::string_view MockModeName(MockMode mode);
absl::StatusOr<MockMode> ParseMockMode(absl::string_view name);

using SubstitutionTable = std::unordered_map<std::string, std::string>;

// token<TAB>replacement per line.
absl::StatusOr<SubstitutionTable> ParseSubstitutionTable(absl::string_view tsv);

GenerationRecord MockGenerate(const GenerationRequest& request,
                              const SubstitutionTable& table, MockMode mode);

class MockBackend : public GenerationBackend {
 public:
  using ModeSelector = std::function<MockMode(const GenerationRequest&)>;

  MockBackend(SubstitutionTable table, ModeSelector selector);
  MockBackend(SubstitutionTable table, MockMode mode);

  absl::StatusOr<std::vector<BackendResponse>> Generate(
      absl::Span<const GenerationRequest> batch) override;

 private:
  SubstitutionTable table_;
  ModeSelector selector_;
};

struct GatewayOptions {
  int batch_size = 64;
  int retries = 3;
  int max_in_flight = 1;
  std::chrono::milliseconds initial_backoff{500};
};

// Receives completed records strictly in input order, as soon as every
// earlier record is complete.
using RecordSink = std::function<void(const GenerationRecord&)>;

// Exactly one record per request, in input order. Requests without a
// response carry the MissingResponse marker.
//
// Errors: BackendUnavailable / TimeoutPerBatch once a batch has failed
// 1 + retries times with exponential backoff; ProtocolError immediately.
// Records completed before the failing batch have already reached `sink`.
absl::StatusOr<std::vector<GenerationRecord>> GenerateBatch(
    const std::vector<GenerationRequest>& requests,
    GenerationBackend& backend, const GatewayOptions& options,
    const RecordSink& sink = nullptr);

}  // namespace csaug

#endif  // CSAUG_GEN_CLIENT_H_
