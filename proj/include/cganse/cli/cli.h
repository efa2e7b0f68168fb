// cganse/cli/cli.h

// Copyright 2026  cganse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CGANSE_CLI_CLI_H_
#define CGANSE_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cganse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the cganse tool. args excludes the program name.
// Tables and loss logs go to out, diagnostics to err.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cganse::cli

#endif  // CGANSE_CLI_CLI_H_
