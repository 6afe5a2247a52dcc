// Copyright 2026 The Authors.
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

// Command-line front end: choose, frontier, compare, da, verify and reveal
// over instance files, with JSON or text reports.

#ifndef DISTCHOICE_CLI_H_
#define DISTCHOICE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace distchoice {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

// `args` excludes the program name. The report goes to `out`, diagnostics to
// `err`. Returns kExitOk, kExitViolation when a check fails, or
// kExitInputError for unreadable input, unknown references and exhausted
// budgets.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace distchoice

#endif  // DISTCHOICE_CLI_H_
