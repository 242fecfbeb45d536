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

#ifndef CSAUG_FILE_UTIL_H_
#define CSAUG_FILE_UTIL_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace csaug {

// FileUnreadable on failure.
absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes through a temporary sibling and renames it into place.
absl::Status WriteFile(const std::string& path, absl::string_view contents);

}  // namespace csaug

#endif  // CSAUG_FILE_UTIL_H_
