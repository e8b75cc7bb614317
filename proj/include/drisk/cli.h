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

// Command-line front end. Subcommands:
//
//   assess    --config C.json --input D.csv --risk-out R.csv
//             [--histogram H.csv] [--edges e1,e2,...]
//             [--delta X] [--alpha Y] [--epsilon Z]
//   anonymize --config C.json --input D.csv --output A.csv --plan P.json
//             --risk-out R.csv [--delta X] [--alpha Y] [--epsilon Z]
//   evaluate  --config C.json --original D.csv --anonymized A.csv
//             --report E.json [--histogram-before HB.csv]
//             [--histogram-after HA.csv] [--edges e1,e2,...]
//             [--delta X] [--alpha Y] [--epsilon Z]
//
// Exit codes: 0 success, 1 usage or validation error, 2 I/O error. The
// TOOL_THREADS environment variable caps worker threads.

#ifndef DRISK_CLI_H_
#define DRISK_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace drisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

// `args` excludes the program name. Diagnostics and progress go to `err`,
// help text to `out`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace drisk::cli

#endif  // DRISK_CLI_H_
