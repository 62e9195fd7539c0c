//
// Copyright 2026 The fdp Authors.
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

#ifndef FDP_CONFIG_H_
#define FDP_CONFIG_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace fdp {

// Flat "key = value" configuration. Blank lines and text after '#' are
// ignored. Keys outside the allowed set and repeated keys are rejected.
class Config {
 public:
  static absl::StatusOr<Config> Parse(const std::string& text,
                                      const std::set<std::string>& allowed);
  static absl::StatusOr<Config> ParseFile(const std::string& path,
                                          const std::set<std::string>& allowed);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  absl::StatusOr<std::string> GetString(const std::string& key) const;
  absl::StatusOr<double> GetDouble(const std::string& key) const;
  absl::StatusOr<int64_t> GetInt(const std::string& key) const;
  absl::StatusOr<uint64_t> GetUint(const std::string& key) const;
  // Comma-separated numbers.
  absl::StatusOr<std::vector<double>> GetDoubleList(
      const std::string& key) const;

  // Sets a value that the command line overrides; the key must be allowed.
  absl::Status Set(const std::string& key, const std::string& value);

 private:
  std::set<std::string> allowed_;
  std::map<std::string, std::string> values_;
};

// Parses a number, rejecting trailing garbage.
absl::StatusOr<double> ParseDouble(const std::string& text);

// Comma-separated numbers, or logspace(lo, hi, n) for n log-spaced points.
absl::StatusOr<std::vector<double>> ParseNumberList(const std::string& text);

}  // namespace fdp

#endif  // FDP_CONFIG_H_
