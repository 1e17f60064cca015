// Copyright 2026 The wasm-debloat Authors
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

#ifndef DEBLOAT_TOOLS_CLI_COMMANDS_H_
#define DEBLOAT_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace debloat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitValidationFailed = 2,
  kExitUsage = 64,
};

// Runs one command line. args[0] is the program name. Documents go to `out`
// when no output path is given; diagnostics go to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace debloat::cli

#endif  // DEBLOAT_TOOLS_CLI_COMMANDS_H_
