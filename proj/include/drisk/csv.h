// Copyright 2026 The drisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal RFC 4180 reader and writer.

#ifndef DRISK_CSV_H_
#define DRISK_CSV_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace drisk::csv {

struct Record {
  std::size_t line = 0;  // 1-based line on which the record starts.
  std::vector<std::string> fields;
};

// Splits the whole stream into records. Accepts "\n" and "\r\n" line endings;
// a trailing newline at end of input does not produce an empty record.
absl::StatusOr<std::vector<Record>> ReadAll(std::istream& in);

// Quotes the field when it contains a comma, a quote, CR or LF.
std::string EscapeField(std::string_view field);

void WriteRow(std::ostream& out, std::span<const std::string> fields);

}  // namespace drisk::csv

#endif  // DRISK_CSV_H_
