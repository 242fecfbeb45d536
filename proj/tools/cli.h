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

#ifndef CSAUG_TOOLS_CLI_H_
#define CSAUG_TOOLS_CLI_H_

// Command-line front end, split from main() so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace csaug {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBackend = 3;

// Maps a failed status onto the process exit code.
int ExitCodeFor(const absl::Status& status);

// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace csaug

#endif  // CSAUG_TOOLS_CLI_H_
