// tools/cli.h
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

#ifndef CSASR_TOOLS_CLI_H_
#define CSASR_TOOLS_CLI_H_

#include <ostream>

namespace csasr {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

// Runs one subcommand. Results without an output path go to `out`;
// diagnostics go to `err`.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace csasr

#endif  // CSASR_TOOLS_CLI_H_
