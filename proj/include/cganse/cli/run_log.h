// cganse/cli/run_log.h

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

#ifndef CGANSE_CLI_RUN_LOG_H_
#define CGANSE_CLI_RUN_LOG_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cganse::cli {

// SHA-1 of "blob <size>\0<bytes>", as git hash-object prints it.
std::string GitBlobHash(const std::string &bytes);
std::string GitBlobHashFile(const std::string &path);

struct RunRecord {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::ordered_json config;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, hash
  double wall_time_sec = 0;
  int exit_code = 0;

  nlohmann::ordered_json ToJson() const;
};

// Appends one JSON line; creates the file if needed.
void AppendRunLog(const std::string &path, const RunRecord &record);

}  // namespace cganse::cli

#endif  // CGANSE_CLI_RUN_LOG_H_
