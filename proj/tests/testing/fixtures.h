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

// The three-record fixture used across the suites:
//   A (PK 0.5, W 0), B (PK 0.1, W 1, y:1 n:0); alpha 10, delta 3
//   r0 = (a1, y), r1 = (a1, n), r2 = (a2, y)

#ifndef DRISK_TESTS_TESTING_FIXTURES_H_
#define DRISK_TESTS_TESTING_FIXTURES_H_

#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include "drisk/dataset.h"
#include "drisk/schema_config.h"
#include "oracle.h"

namespace drisk::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(DRISK_DATA_DIR) + "/" + name;
}

inline std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline SchemaConfig F1Config() {
  auto config = ParseConfig(ReadText(DataPath("f1_config.json")));
  if (!config.ok()) throw std::runtime_error(std::string(config.status().message()));
  return *config;
}

inline Dataset F1Dataset() {
  std::istringstream in(ReadText(DataPath("f1.csv")));
  auto ds = LoadCsv(in, F1Config());
  if (!ds.ok()) throw std::runtime_error(std::string(ds.status().message()));
  return *std::move(ds);
}

inline OracleProblem F1Problem() {
  OracleProblem p;
  p.attributes = {{0.5, 0.0, {}, 1.0}, {0.1, 1.0, {{"y", 1.0}, {"n", 0.0}}, 1.0}};
  p.rows = {{"a1", "y"}, {"a1", "n"}, {"a2", "y"}};
  p.alpha = 10.0;
  return p;
}

}  // namespace drisk::testing

#endif  // DRISK_TESTS_TESTING_FIXTURES_H_
