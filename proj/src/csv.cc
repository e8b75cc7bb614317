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

#include "drisk/csv.h"

#include <istream>
#include <iterator>
#include <ostream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace drisk::csv {

absl::StatusOr<std::vector<Record>> ReadAll(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  if (in.bad()) return absl::DataLossError("failed reading CSV stream");

  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t i = 0;

  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
    records.push_back(std::move(current));
    current = Record{};
  };

  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          return absl::InvalidArgumentError(
              absl::StrCat("CSV line ", line, ": unexpected quote in field"));
        }
        in_quotes = true;
        field_was_quoted = true;
        ++i;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        ++i;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        current.line = line;
        ++i;
        break;
      default:
        if (field_was_quoted) {
          return absl::InvalidArgumentError(absl::StrCat(
              "CSV line ", line, ": text after closing quote in field"));
        }
        field.push_back(c);
        ++i;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "CSV line ", current.line, ": unterminated quoted field"));
  }
  // Input not ending in a newline still has a final record to flush.
  if (!field.empty() || field_was_quoted || !current.fields.empty()) {
    end_record();
  }
  return records;
}

std::string EscapeField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteRow(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (j > 0) out << ',';
    out << EscapeField(fields[j]);
  }
  out << '\n';
}

}  // namespace drisk::csv
