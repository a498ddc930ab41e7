//
// Copyright 2026 The hybrid_dp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// The hybrid_dp command-line surface: analyze, sweep, simulate, amplify and
// kmeans subcommands.

#ifndef HYBRID_DP_TOOLS_CLI_H_
#define HYBRID_DP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace hybrid_dp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitOracleMismatch = 4;

// kNotFound and kUnavailable are I/O failures; every other error is a
// validation failure.
int ExitCodeFor(const absl::Status& status);

// Reads a flat key=value file into "--key value" argument pairs. Blank lines
// and lines starting with '#' are skipped; keys may be written with or
// without the leading dashes.
absl::Status ReadConfigArgs(const std::string& path,
                            std::vector<std::string>& out);

// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hybrid_dp::cli

#endif  // HYBRID_DP_TOOLS_CLI_H_
