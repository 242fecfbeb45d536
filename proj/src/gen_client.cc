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

#include "csaug/gen_client.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/string_view.h"
#include "csaug/errors.h"
#include "csaug/file_util.h"
#include "csaug/marker.h"
#include "csaug/span_filter.h"
#include "csaug/top_tree.h"
#include "httplib.h"

namespace csaug {
namespace {

std::string NumberWord(int n) {
  static constexpr absl::string_view kOnes[] = {
      "zero",    "one",     "two",       "three",    "four",
      "five",    "six",     "seven",     "eight",    "nine",
      "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
      "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
  static constexpr absl::string_view kTens[] = {
      "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
      "eighty", "ninety"};
  if (n < 20) return std::string(kOnes[n]);
  if (n < 100) {
    std::string out(kTens[n / 10]);
    if (n % 10 != 0) absl::StrAppend(&out, "-", kOnes[n % 10]);
    return out;
  }
  return absl::StrCat("n", NumberWord(n / 100), "hundred");
}

// Index of the closing token matching the open bracket at `open`.
size_t MatchingClose(const std::vector<std::string>& tokens, size_t open) {
  int depth = 0;
  for (size_t i = open; i < tokens.size(); ++i) {
    if (tokens[i] == "[") {
      ++depth;
    } else if (!tokens[i].empty() && tokens[i].front() == ']') {
      if (--depth == 0) return i;
    }
  }
  return tokens.size();
}

std::optional<size_t> LastClose(const std::vector<std::string>& tokens) {
  for (size_t i = tokens.size(); i > 0; --i) {
    if (ParseCloseToken(tokens[i - 1]) != 0) return i - 1;
  }
  return std::nullopt;
}

std::string FirstPlain(const std::vector<std::string>& tokens) {
  for (const std::string& t : tokens) {
    if (IsPlainToken(t)) return t;
  }
  return "x";
}

void Corrupt(std::vector<std::string>& tokens, MockMode mode) {
  const std::optional<size_t> last = LastClose(tokens);
  const std::string filler = FirstPlain(tokens);
  auto prepend = [&](std::vector<std::string> head) {
    tokens.insert(tokens.begin(), head.begin(), head.end());
  };
  switch (mode) {
    case MockMode::kFaithful:
      return;
    case MockMode::kCorruptR1: {
      auto open = std::find(tokens.begin(), tokens.end(), "[");
      if (open == tokens.end()) {
        prepend({"[", filler, CloseToken(1)});
        return;
      }
      const size_t begin = open - tokens.begin();
      const size_t end = MatchingClose(tokens, begin) + 1;
      std::vector<std::string> copy(tokens.begin() + begin,
                                    tokens.begin() + end);
      tokens.insert(tokens.begin() + end, copy.begin(), copy.end());
      return;
    }
    case MockMode::kCorruptR2:
      if (!last) {
        prepend({"[", filler, "]_one"});
        return;
      }
      tokens[*last] =
          absl::StrCat("]_", NumberWord(ParseCloseToken(tokens[*last])));
      return;
    case MockMode::kCorruptR3:
      if (!last) {
        prepend({"["});
        return;
      }
      tokens.erase(tokens.begin() + *last);
      return;
    case MockMode::kCorruptR4: {
      if (!last) {
        prepend({"[", filler, CloseToken(1)});
        return;
      }
      int max_id = 0;
      for (const std::string& t : tokens) {
        max_id = std::max(max_id, ParseCloseToken(t));
      }
      tokens[*last] = CloseToken(max_id + 1);
      return;
    }
  }
}

bool Retryable(const absl::Status& status) {
  return absl::IsUnavailable(status) || absl::IsDeadlineExceeded(status);
}

}  // namespace

absl::StatusOr<BackendResponse> ResponseFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    return MakeError(ErrorCode::kProtocolError, "response without string id");
  }
  BackendResponse r;
  r.id = j["id"].get<std::string>();
  if (auto it = j.find("candidates"); it != j.end()) {
    if (!it->is_array()) {
      return MakeError(ErrorCode::kProtocolError,
                       absl::StrCat("candidates of ", r.id, " not an array"));
    }
    for (const nlohmann::json& c : *it) {
      if (!c.is_string()) {
        return MakeError(ErrorCode::kProtocolError,
                         absl::StrCat("non-string candidate for ", r.id));
      }
      r.candidates.push_back(c.get<std::string>());
    }
  }
  if (auto it = j.find("model_info"); it != j.end() && it->is_string()) {
    r.model_info = it->get<std::string>();
  }
  return r;
}

nlohmann::json ToJson(const BackendResponse& response) {
  return {{"id", response.id},
          {"candidates", response.candidates},
          {"model_info", response.model_info}};
}

absl::StatusOr<std::unique_ptr<ReplayBackend>> ReplayBackend::FromJsonLines(
    absl::string_view text) {
  absl::StatusOr<std::vector<nlohmann::json>> lines = ParseJsonLines(text);
  if (!lines.ok()) return lines.status();
  auto backend = std::unique_ptr<ReplayBackend>(new ReplayBackend());
  for (const nlohmann::json& j : *lines) {
    absl::StatusOr<BackendResponse> r = ResponseFromJson(j);
    if (!r.ok()) return r.status();
    backend->responses_.try_emplace(r->id, *std::move(r));
  }
  return backend;
}

absl::StatusOr<std::unique_ptr<ReplayBackend>> ReplayBackend::FromFile(
    const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return FromJsonLines(*text);
}

absl::StatusOr<std::vector<BackendResponse>> ReplayBackend::Generate(
    absl::Span<const GenerationRequest> batch) {
  std::vector<BackendResponse> out;
  for (const GenerationRequest& request : batch) {
    auto it = responses_.find(request.id);
    if (it != responses_.end()) out.push_back(it->second);
  }
  return out;
}

HttpBackend::HttpBackend(std::string url, double timeout_s)
    : url_(std::move(url)), timeout_s_(timeout_s) {}

absl::StatusOr<std::vector<BackendResponse>> HttpBackend::Generate(
    absl::Span<const GenerationRequest> batch) {
  std::vector<nlohmann::json> lines;
  lines.reserve(batch.size());
  for (const GenerationRequest& r : batch) lines.push_back(ToJson(r));

  httplib::Client client(url_);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(timeout_s_));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const auto start = std::chrono::steady_clock::now();
  httplib::Result result =
      client.Post("/generate", ToJsonLines(lines), "application/jsonl");
  const auto latency_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count();
  if (!result) {
    const httplib::Error err = result.error();
    const std::string what = httplib::to_string(err);
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
      return absl::DeadlineExceededError(
          absl::StrCat(url_, ": ", what, " after ", latency_ms, " ms"));
    }
    return absl::UnavailableError(absl::StrCat(url_, ": ", what));
  }
  if (result->status >= 500 || result->status == 429) {
    return absl::UnavailableError(
        absl::StrCat(url_, ": HTTP ", result->status));
  }
  if (result->status != 200) {
    return MakeError(ErrorCode::kProtocolError,
                     absl::StrCat(url_, ": HTTP ", result->status));
  }
  absl::StatusOr<std::vector<nlohmann::json>> parsed =
      ParseJsonLines(result->body);
  if (!parsed.ok()) return parsed.status();
  std::vector<BackendResponse> out;
  out.reserve(parsed->size());
  for (const nlohmann::json& j : *parsed) {
    absl::StatusOr<BackendResponse> r = ResponseFromJson(j);
    if (!r.ok()) return r.status();
    absl::StrAppend(&r->model_info, ";latency_ms=", latency_ms);
    out.push_back(*std::move(r));
  }
  return out;
}

absl::string_view MockModeName(MockMode mode) {
  switch (mode) {
    case MockMode::kFaithful:
      return "faithful";
    case MockMode::kCorruptR1:
      return "corrupt-R1";
    case MockMode::kCorruptR2:
      return "corrupt-R2";
    case MockMode::kCorruptR3:
      return "corrupt-R3";
    case MockMode::kCorruptR4:
      return "corrupt-R4";
  }
  return "?";
}

absl::StatusOr<MockMode> ParseMockMode(absl::string_view name) {
  for (MockMode m : {MockMode::kFaithful, MockMode::kCorruptR1,
                     MockMode::kCorruptR2, MockMode::kCorruptR3,
                     MockMode::kCorruptR4}) {
    if (MockModeName(m) == name) return m;
  }
  return MakeError(ErrorCode::kInvalidConfig,
                   absl::StrCat("unknown mock mode '", name, "'"));
}

absl::StatusOr<SubstitutionTable> ParseSubstitutionTable(
    absl::string_view tsv) {
  SubstitutionTable table;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(tsv, '\n')) {
    ++line_no;
    line = absl::StripTrailingAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<std::string> cols = absl::StrSplit(line, '\t');
    if (cols.size() != 2 || Tokenize(cols[1]).empty() ||
        !IsPlainToken(cols[1])) {
      return MakeError(ErrorCode::kInvalidConfig,
                       absl::StrCat("substitution table line ", line_no));
    }
    table.try_emplace(cols[0], absl::StrJoin(Tokenize(cols[1]), " "));
  }
  return table;
}

GenerationRecord MockGenerate(const GenerationRequest& request,
                              const SubstitutionTable& table, MockMode mode) {
  std::vector<std::string> tokens;
  for (std::string& tok : Tokenize(request.marked_text)) {
    if (IsPlainToken(tok)) {
      if (auto it = table.find(tok); it != table.end()) tok = it->second;
    }
    tokens.push_back(std::move(tok));
  }
  Corrupt(tokens, mode);
  GenerationRecord record;
  record.request = request;
  record.candidate = absl::StrJoin(tokens, " ");
  record.backend_info = absl::StrCat("mock:", MockModeName(mode));
  return record;
}

MockBackend::MockBackend(SubstitutionTable table, ModeSelector selector)
    : table_(std::move(table)), selector_(std::move(selector)) {}

MockBackend::MockBackend(SubstitutionTable table, MockMode mode)
    : MockBackend(std::move(table),
                  [mode](const GenerationRequest&) { return mode; }) {}

absl::StatusOr<std::vector<BackendResponse>> MockBackend::Generate(
    absl::Span<const GenerationRequest> batch) {
  std::vector<BackendResponse> out;
  out.reserve(batch.size());
  for (const GenerationRequest& request : batch) {
    GenerationRecord r = MockGenerate(request, table_, selector_(request));
    out.push_back({request.id, {std::move(r.candidate)}, r.backend_info});
  }
  return out;
}

absl::StatusOr<std::vector<GenerationRecord>> GenerateBatch(
    const std::vector<GenerationRequest>& requests,
    GenerationBackend& backend, const GatewayOptions& options,
    const RecordSink& sink) {
  const size_t batch_size = static_cast<size_t>(std::max(1, options.batch_size));
  const size_t num_batches = (requests.size() + batch_size - 1) / batch_size;

  std::vector<GenerationRecord> records(requests.size());
  std::vector<bool> batch_done(num_batches, false);
  std::mutex mu;
  size_t flushed_batches = 0;
  std::optional<std::pair<size_t, absl::Status>> failure;
  std::atomic<size_t> next_batch{0};
  std::atomic<bool> stop{false};

  auto run_batch = [&](size_t b) -> absl::Status {
    const size_t begin = b * batch_size;
    const size_t end = std::min(requests.size(), begin + batch_size);
    absl::Span<const GenerationRequest> batch(requests.data() + begin,
                                              end - begin);
    absl::StatusOr<std::vector<BackendResponse>> responses;
    auto backoff = options.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      responses = backend.Generate(batch);
      if (responses.ok() || !Retryable(responses.status()) ||
          attempt >= options.retries) {
        break;
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    if (!responses.ok()) {
      const absl::Status& s = responses.status();
      if (GetErrorCode(s).has_value()) return s;
      const ErrorCode code = absl::IsDeadlineExceeded(s)
                                 ? ErrorCode::kTimeoutPerBatch
                                 : ErrorCode::kBackendUnavailable;
      return MakeError(code, absl::StrCat("batch ", b, " after ",
                                          options.retries + 1,
                                          " attempt(s): ", s.message()));
    }
    // Match by id; the first response for an id wins.
    std::unordered_map<std::string, const BackendResponse*> by_id;
    for (const BackendResponse& r : *responses) by_id.try_emplace(r.id, &r);
    for (size_t i = begin; i < end; ++i) {
      GenerationRecord& record = records[i];
      record.request = requests[i];
      auto it = by_id.find(requests[i].id);
      if (it == by_id.end() || it->second->candidates.empty()) {
        record.error = std::string(kMissingResponse);
        continue;
      }
      record.candidate = it->second->candidates.front();
      record.backend_info = it->second->model_info;
    }
    return absl::OkStatus();
  };

  auto worker = [&]() {
    while (!stop.load()) {
      const size_t b = next_batch.fetch_add(1);
      if (b >= num_batches) return;
      absl::Status status = run_batch(b);
      std::lock_guard<std::mutex> lock(mu);
      if (!status.ok()) {
        if (!failure.has_value() || b < failure->first) {
          failure.emplace(b, std::move(status));
        }
        stop.store(true);
        continue;
      }
      batch_done[b] = true;
      while (flushed_batches < num_batches && batch_done[flushed_batches] &&
             !(failure.has_value() && failure->first <= flushed_batches)) {
        if (sink) {
          const size_t begin = flushed_batches * batch_size;
          const size_t end = std::min(requests.size(), begin + batch_size);
          for (size_t i = begin; i < end; ++i) sink(records[i]);
        }
        ++flushed_batches;
      }
    }
  };

  const int workers = static_cast<int>(std::min<size_t>(
      std::max(1, options.max_in_flight), std::max<size_t>(1, num_batches)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure.has_value()) return failure->second;
  return records;
}

}  // namespace csaug
