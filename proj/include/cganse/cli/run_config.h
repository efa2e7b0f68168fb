// cganse/cli/run_config.h

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

#ifndef CGANSE_CLI_RUN_CONFIG_H_
#define CGANSE_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cganse::cli {

// Bad flags, unknown config keys, malformed values. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key/value configuration. Keys must be declared with a default
// before they can be set; anything else is rejected.
class RunConfig {
 public:
  void Define(const std::string &key, const std::string &default_value);
  bool Has(const std::string &key) const;
  void Set(const std::string &key, const std::string &value);

  // "key = value" lines, '#' starts a comment, blank lines ignored.
  void MergeText(const std::string &text, const std::string &origin = "<text>");
  void MergeFile(const std::string &path);
  // "key=value", as given to --set.
  void MergeAssignment(const std::string &assignment);

  const std::string &Get(const std::string &key) const;
  int GetInt(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  std::uint64_t GetUint64(const std::string &key) const;
  bool GetBool(const std::string &key) const;
  // Comma separated; an empty value gives an empty list.
  std::vector<double> GetDoubles(const std::string &key) const;
  std::vector<int> GetInts(const std::string &key) const;

  // All keys in declaration order.
  nlohmann::ordered_json ToJson() const;

 private:
  std::pair<std::string, std::string> *Find(const std::string &key);
  const std::pair<std::string, std::string> *Find(const std::string &key) const;

  std::vector<std::pair<std::string, std::string>> values_;
};

std::vector<std::string> SplitList(const std::string &s, char sep = ',');

}  // namespace cganse::cli

#endif  // CGANSE_CLI_RUN_CONFIG_H_
