// Copyright 2026 The povmwalk Authors
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

#ifndef POVMWALK_CLI_HPP
#define POVMWALK_CLI_HPP

#include <string>
#include <vector>

namespace povmwalk {

/// Exit codes shared by every subcommand:
///   0 success
///   1 usage or configuration error
///   2 conditioned campaign retained zero trajectories (outputs still written)
///   3 output I/O failure
///   4 verification failure
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitEmptyConditioned = 2,
  kExitIo = 3,
  kExitVerification = 4,
};

/// Runs the command line (argv without the program name) and returns the
/// process exit code. Subcommands: simulate, oracle, verify, tomography.
int run_cli(const std::vector<std::string> &args);

}  // namespace povmwalk

#endif
