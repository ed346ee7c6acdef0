// Copyright 2026 The fewbody Authors
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

#ifndef FEWBODY_TOOLS_CLI_HPP
#define FEWBODY_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace fewbody::cli {

/// Exit codes of the command line tool.
enum Exit : int { kSuccess = 0, kValidation = 1, kNumerical = 2 };

/// Parses `args` (args[0] is the program name), runs the subcommand and
/// writes results to `--output` or `out`. Diagnostics go to `err`.
/// Holds no global state, so concurrent calls are independent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fewbody::cli

#endif  // FEWBODY_TOOLS_CLI_HPP
